"""Exception types shared across the pipeline.

ParseError and its kin map to exit code 1 (bad input); ConsistencyError
maps to exit code 2 (internal invariant broken, e.g. statistics that do
not cover the instances being scored).
"""


class ParamineError(Exception):
    pass


class ParseError(ParamineError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class ConsistencyError(ParamineError):
    pass
