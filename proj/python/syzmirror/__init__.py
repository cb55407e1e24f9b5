"""Python front end to the syzmirror command set.

Each command takes a job document (dict or JSON text) and returns the parsed
JSON result. Non-zero exit codes raise CommandError carrying the error record.
"""
import json

from ._syzmirror import command_names, run_command as _run_command

__all__ = ["CommandError", "command_names", "run"]


class CommandError(RuntimeError):
    def __init__(self, exit_code, record):
        err = record.get("error", {}) if isinstance(record, dict) else {}
        super().__init__(err.get("message", f"command failed with exit code {exit_code}"))
        self.exit_code = exit_code
        self.record = record


def run(command, job, *, order=None, corrected=None, normalization=None, check=True):
    text = job if isinstance(job, str) else json.dumps(job)
    if normalization is not None:
        normalization = tuple(normalization)
    code, out, _ = _run_command(command, text, order=order, corrected=corrected, normalization=normalization)
    result = json.loads(out)
    if check and code != 0:
        raise CommandError(code, result)
    return result
