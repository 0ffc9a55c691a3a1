class MinerError(Exception):
    """Base error. `detail` is the message shown to the user."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class CorpusFormatError(MinerError):
    """Malformed bitext, CoNLL-U or sidecar input."""


class AlignmentError(MinerError):
    """Two line-aligned inputs disagree on their number of records."""


class ConfigError(MinerError):
    exit_code = 2


class EvaluationError(MinerError):
    """Annotation sheets or agreement inputs that cannot be scored."""


class ReportError(MinerError):
    pass


class StageError(MinerError):
    def __init__(self, stage: str, cause: Exception):
        detail = cause.detail if isinstance(cause, MinerError) else str(cause)
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 1)
