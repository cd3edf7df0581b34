# Batch run over seeded random instances, as the `wydkit verify` command does.
import json

from wydkit.harness import RunConfig, run_verify

result = run_verify(RunConfig(seed=1, trials=200, betas=(0.1, 0.5, 0.9)))
print(json.dumps(result.summary, indent=1))
print("exit code:", result.exit_code)
