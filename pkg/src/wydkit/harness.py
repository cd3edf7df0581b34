"""Seeded instance generation, batch verification, beta sweeps and dumps.

Random streams come from numpy's Philox counter-based generator. Trial
``t`` of a run seeded with ``s`` draws from ``SeedSequence(s,
spawn_key=(t,))``, so a trial's instance does not depend on how many other
trials run or in what order.
"""

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import (BlockOperator, TraceAlgebra, eigendecompose, trace,
                      trace_of_product, validate_density)
from .errors import InputError
from .measure import (build_measure, check_positivity, direct_pairing,
                      integrate, integration_scale, polarized_measure,
                      real_part_symmetry_defect, rectangle_bound, wyd_pairing)
from .tolerances import DEFAULT, Tolerances
from .uncertainty import (center, centered_measures, curve_findings,
                          kernel_array, kosaki_gap, kosaki_gap_via_measure,
                          product_measure, product_positivity_scale)


@dataclass(frozen=True, eq=False)
class InstanceSpec:
    algebra: TraceAlgebra
    rho: BlockOperator
    a: BlockOperator
    b: BlockOperator
    label: str = ""
    rank_deficient: bool = False

    def density(self, tol=DEFAULT):
        return validate_density(self.algebra, self.rho, tol)

    def to_dict(self):
        d = {"blocks": [{"dim": n, "weight": w}
                        for n, w in zip(self.algebra.dims, self.algebra.weights)]}
        for name in ("rho", "a", "b"):
            d[name] = [[[[z.real, z.imag] for z in row] for row in blk]
                       for blk in getattr(self, name).blocks]
        if self.label:
            d["label"] = self.label
        return d

    @classmethod
    def from_dict(cls, d, tol=DEFAULT):
        try:
            alg = TraceAlgebra.from_blocks((blk["dim"], blk["weight"]) for blk in d["blocks"])
            ops = {}
            for name in ("rho", "a", "b"):
                blocks = []
                for blk in d[name]:
                    arr = np.asarray(blk, dtype=float)
                    if arr.ndim != 3 or arr.shape[-1] != 2:
                        raise InputError(f"{name}: entries must be [re, im] pairs")
                    blocks.append(arr[..., 0] + 1j * arr[..., 1])
                ops[name] = BlockOperator(alg, blocks)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed instance: {exc}") from exc
        inst = cls(alg, ops["rho"], ops["a"], ops["b"], d.get("label", ""))
        inst.density(tol)
        for name in ("a", "b"):
            if not ops[name].is_hermitian(tol):
                raise InputError(f"observable {name} is not Hermitian")
        return inst

    def dumps(self):
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def loads(cls, text, tol=DEFAULT):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"instance file is not valid JSON: {exc}") from exc
        return cls.from_dict(d, tol)

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path, tol=DEFAULT):
        with open(path) as fh:
            return cls.loads(fh.read(), tol)


def qubit_instance(p=0.75):
    """``rho = diag(p, 1-p)`` with the Pauli observables ``sigma_x, sigma_y``."""
    alg = TraceAlgebra.single(2)
    return InstanceSpec(alg, alg.diag(p, 1 - p),
                        BlockOperator(alg, [np.array([[0, 1], [1, 0]])]),
                        BlockOperator(alg, [np.array([[0, -1j], [1j, 0]])]),
                        label="qubit")


def trial_rng(seed, trial):
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(trial),))
    return np.random.Generator(np.random.Philox(ss))


def _ginibre(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def generate_instance(rng, max_dim=8, max_blocks=3, rank_deficient_prob=0.1):
    """Random algebra, density and two Hermitian observables.

    ``max_dim`` bounds the total dimension (at least 2); block dimensions
    are drawn uniformly from ``[1, max_dim]`` and redrawn until the total
    fits. Densities are normalized Wishart ``G G*``; with probability
    ``rank_deficient_prob`` the smallest eigenvalue is set to zero.
    """
    if max_dim < 2 or max_blocks < 1:
        raise InputError("need max_dim >= 2 and max_blocks >= 1")
    n_blocks = min(int(rng.integers(1, max_blocks + 1)), max_dim)
    while True:
        dims = rng.integers(1, max_dim + 1, size=n_blocks)
        if 2 <= dims.sum() <= max_dim:
            break
    weights = rng.uniform(0.5, 2.0, size=n_blocks)
    alg = TraceAlgebra(tuple(int(d) for d in dims), tuple(float(w) for w in weights))
    ws = []
    for d in alg.dims:
        g = _ginibre(rng, d)
        ws.append(g @ g.conj().T)
    rho = BlockOperator(alg, ws)
    rho = rho * (1 / trace(alg, rho).real)
    deficient = bool(rng.random() < rank_deficient_prob)
    if deficient:
        dec = eigendecompose(rho)
        vals = np.array(dec.eigenvalues)
        vals[0] = 0.0
        rho = dec.with_eigenvalues(vals).reconstruct()
        rho = rho * (1 / trace(alg, rho).real)
    obs = []
    for _ in range(2):
        gs = [_ginibre(rng, d) for d in alg.dims]
        obs.append(BlockOperator(alg, [(g + g.conj().T) / 2 for g in gs]))
    return InstanceSpec(alg, rho, obs[0], obs[1], rank_deficient=deficient)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 100
    max_dim: int = 8
    max_blocks: int = 3
    betas: tuple = (0.1, 0.25, 0.5, 0.75, 0.9)
    tol: Tolerances = field(default_factory=Tolerances)
    out: str = None

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise InputError("seed must be a 64-bit unsigned integer")
        if int(self.trials) < 1:
            raise InputError("trials must be >= 1")
        if int(self.max_dim) < 2:
            raise InputError("max_dim must be >= 2")
        if int(self.max_blocks) < 1:
            raise InputError("max_blocks must be >= 1")
        betas = tuple(float(b) for b in self.betas)
        if not betas or any(not 0.0 < b < 1.0 for b in betas):
            raise InputError("beta must lie in open interval (0,1)")
        object.__setattr__(self, "betas", betas)


def _random_poly(rng):
    coeffs = rng.uniform(-1, 1, size=int(rng.integers(0, 4)) + 1)
    return lambda t: float(np.polyval(coeffs, t))


def instance_identities(inst, rho, rng, tol=DEFAULT):
    """beta-independent measure identities for one instance."""
    alg, a, b = inst.algebra, inst.a, inst.b
    dec = rho.decomposition
    m_ab = build_measure(alg, dec, dec, a, b)
    pol = polarized_measure(alg, dec, dec, a, b)
    pos = check_positivity(build_measure(alg, dec, dec, a, a), tol)
    bound = rectangle_bound(alg, a, b)
    g, h = _random_poly(rng), _random_poly(rng)
    fc_int = integrate(m_ab, g, h)
    fc_dir = direct_pairing(alg, dec, dec, a, b, g, h)
    return {
        "total_mass_defect": abs(m_ab.total_mass() - trace_of_product(alg, a.adjoint(), b)),
        "mass_scale": bound,
        "polarization_defect": float(np.max(np.abs(pol.weights - m_ab.weights))),
        "positivity_min_real": pos.min_real,
        "positivity_max_imag": pos.max_abs_imag,
        "re_symmetry_defect": real_part_symmetry_defect(alg, dec, dec, a, b, tol),
        "fc_discrepancy": abs(fc_int - fc_dir),
        "fc_scale": max(1.0, integration_scale(m_ab, g, h)),
    }


def _identity_violations(ids, tol):
    out = []
    if ids["total_mass_defect"] > tol.lin * max(1.0, ids["mass_scale"]):
        out.append("total_mass")
    if ids["polarization_defect"] > tol.lin:
        out.append("polarization")
    if ids["positivity_min_real"] < -tol.lin or ids["positivity_max_imag"] > tol.lin:
        out.append("positivity")
    if ids["re_symmetry_defect"] > tol.lin:
        out.append("re_symmetry")
    if ids["fc_discrepancy"] > tol.lin * ids["fc_scale"]:
        out.append("functional_calculus")
    return out


def verify_instance(inst, beta, tol=DEFAULT, rho=None, identities=None):
    """Every check for one ``(instance, beta)``; returns a flat record."""
    alg, a, b = inst.algebra, inst.a, inst.b
    rho = inst.density(tol) if rho is None else rho
    rep = kosaki_gap(alg, rho, beta, a, b, tol)
    mus = centered_measures(alg, rho, a, b, tol)
    pm = product_measure(*mus)
    oracle = pm.integrate_kernel(beta) / 4
    oracle_eps = tol.orc * max(1.0, rep.kosaki_lhs)
    min4 = float(pm.weights.min())
    min4_eps = tol.lin * product_positivity_scale(alg, rho, a, b, tol)
    dec = rho.decomposition
    m = build_measure(alg, dec, dec, a, b)
    pw_trace = wyd_pairing(alg, rho, beta, a, b, check=False)
    pw_meas = integrate(m, lambda t: t ** beta if t > 0 else 0.0,
                        lambda t: t ** (1 - beta) if t > 0 else 0.0)
    pw_scale = max(1.0, integration_scale(m, lambda t: t ** beta if t > 0 else 0.0,
                                          lambda t: t ** (1 - beta) if t > 0 else 0.0))
    rec = {
        "beta": beta,
        "dims": list(alg.dims),
        "weights": list(alg.weights),
        "rank_deficient": inst.rank_deficient,
        **{k: v for k, v in rep.to_dict().items()
           if k not in ("beta",)},
        "oracle_gap": oracle,
        "oracle_discrepancy": abs(oracle - rep.gap_f),
        "oracle_eps": oracle_eps,
        "min_4d_weight": min4,
        "min_4d_eps": min4_eps,
        "wyd_discrepancy": abs(pw_trace - pw_meas),
        "wyd_eps": tol.lin * pw_scale,
    }
    violations = []
    if not rep.kosaki_pass:
        violations.append("kosaki")
    if not rep.schrodinger_pass:
        violations.append("schrodinger")
    if not rep.heisenberg_pass:
        violations.append("heisenberg")
    if not rep.info_bounds_pass:
        violations.append("info_bounds")
    if rec["oracle_discrepancy"] > oracle_eps:
        violations.append("oracle")
    if min4 < -min4_eps:
        violations.append("product_positivity")
    if rec["wyd_discrepancy"] > rec["wyd_eps"]:
        violations.append("wyd_pairing")
    if identities is not None:
        rec.update(identities)
        violations.extend(_identity_violations(identities, tol))
    rec["violations"] = violations
    return rec


@dataclass
class VerifySummary:
    records: list
    summary: dict
    exit_code: int

    def lines(self):
        for rec in self.records:
            yield json.dumps(rec, sort_keys=True)
        yield json.dumps({"summary": self.summary}, sort_keys=True)

    def text(self):
        return "\n".join(self.lines()) + "\n"


def run_verify(config):
    """Run ``trials x betas`` checks; exit code 0 when clean, 1 on any violation."""
    tol = config.tol
    records = []
    for t in range(config.trials):
        rng = trial_rng(config.seed, t)
        inst = generate_instance(rng, config.max_dim, config.max_blocks)
        rho = inst.density(tol)
        ids = instance_identities(inst, rho, rng, tol)
        for beta in config.betas:
            rec = {"trial": t, **verify_instance(inst, beta, tol, rho, ids)}
            records.append(rec)
    n_viol = sum(1 for r in records if r["violations"])
    summary = {
        "seed": int(config.seed), "trials": int(config.trials),
        "betas": list(config.betas), "records": len(records),
        "violations": n_viol,
        "min_gap_f": min(r["gap_f"] for r in records),
        "min_relative_gap_f": min(r["gap_f"] / max(1.0, r["var_a"] * r["var_b"])
                                  for r in records),
        "max_oracle_discrepancy": max(r["oracle_discrepancy"] for r in records),
        "min_4d_weight": min(r["min_4d_weight"] for r in records),
        "rank_deficient_instances": sum(1 for r in records if r["rank_deficient"])
                                    // len(config.betas),
    }
    result = VerifySummary(records, summary, 1 if n_viol else 0)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(result.text())
    return result


SWEEP_COLUMNS = ("beta", "var_a", "var_b", "re_cov", "info_a", "info_b",
                 "re_corr", "lhs", "rhs", "gap_f")


def parse_grid(text):
    """``"LO:HI:STEP"`` (inclusive) or a comma list of betas."""
    try:
        if ":" in text:
            lo, hi, step = (float(s) for s in text.split(":"))
            if step <= 0 or hi < lo:
                raise InputError("grid needs LO <= HI and STEP > 0")
            n = int(round((hi - lo) / step)) + 1
            grid = [round(lo + k * step, 12) for k in range(n)]
        else:
            grid = [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise InputError(f"bad beta grid {text!r}") from exc
    if not grid or any(not 0.0 < b < 1.0 for b in grid):
        raise InputError("beta must lie in open interval (0,1)")
    return grid


def run_sweep(inst, beta_grid, tol=DEFAULT):
    """Rows of uncertainty quantities per beta plus curve findings."""
    rho = inst.density(tol)
    rows = []
    for beta in beta_grid:
        r = kosaki_gap(inst.algebra, rho, beta, inst.a, inst.b, tol)
        rows.append({"beta": r.beta, "var_a": r.var_a, "var_b": r.var_b,
                     "re_cov": r.cov.real, "info_a": r.info_a, "info_b": r.info_b,
                     "re_corr": r.corr.real, "lhs": r.kosaki_lhs, "rhs": r.kosaki_rhs,
                     "gap_f": r.gap_f})
    eps = max(tol.q * max(1.0, r["var_a"] * r["var_b"]) for r in rows)
    findings = curve_findings([(r["beta"], r["gap_f"]) for r in rows], eps)
    return rows, findings


def sweep_csv(rows, findings):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([format(r[c], ".17g") for c in SWEEP_COLUMNS])
    buf.write(f"# monotone={findings.monotone} worst_decrease={findings.worst_decrease:.17g} "
              f"symmetric={findings.symmetric} worst_asymmetry={findings.worst_asymmetry:.17g} "
              f"eps={findings.eps:.17g}\n")
    return buf.getvalue()


def _atoms_doc(m):
    return [{"x": x, "y": y, "re": w.real, "im": w.imag} for x, y, w in m.atoms]


def dump_measure(inst, beta, tol=DEFAULT, merge_tol=1e-12):
    """Atoms of the centered correlation measures and the nonzero 4D atoms.

    Coordinates are merged within ``merge_tol`` for display; the integrals
    are unaffected by the merge.
    """
    alg = inst.algebra
    rho = inst.density(tol)
    merged = rho.decomposition.merged(merge_tol)
    a0 = center(alg, rho, inst.a, tol)
    b0 = center(alg, rho, inst.b, tol)
    mus = [build_measure(alg, merged, merged, x, y) for x, y in ((a0, a0), (b0, b0), (a0, b0))]
    pm = product_measure(*mus)
    ks = kernel_array(pm.coords, beta)
    scale = max(1.0, float(np.abs(pm.weights).max()))
    nz = np.abs(pm.weights) > tol.lin * scale
    mass = mus[2].total_mass()
    direct = trace_of_product(alg, a0.adjoint(), b0)
    return {
        "beta": beta,
        "mu_a0a0": _atoms_doc(mus[0]),
        "mu_b0b0": _atoms_doc(mus[1]),
        "mu_a0b0": _atoms_doc(mus[2]),
        "total_mass_a0b0": [mass.real, mass.imag],
        "trace_a0_b0": [direct.real, direct.imag],
        "atoms_4d": [{"coords": [float(c) for c in pm.coords[i]],
                      "weight": float(pm.weights[i]), "kernel": float(ks[i])}
                     for i in np.flatnonzero(nz)],
        "reconstructed_gap": float(ks @ pm.weights) / 4,
        "trace_gap": kosaki_gap(alg, rho, beta, inst.a, inst.b, tol).gap_f,
    }


def case_report(inst, beta, tol=DEFAULT, dump=False):
    alg = inst.algebra
    rho = inst.density(tol)
    rep = kosaki_gap(alg, rho, beta, inst.a, inst.b, tol)
    doc = {"report": rep.to_dict(), "passed": rep.passed,
           "gap_via_measure": kosaki_gap_via_measure(alg, rho, beta, inst.a, inst.b, tol,
                                                     check=False)}
    if dump:
        doc["measures"] = dump_measure(inst, beta, tol)
    return doc
