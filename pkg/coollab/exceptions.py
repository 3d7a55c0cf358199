class CoolLabError(Exception):
    pass


class InvalidInput(CoolLabError):
    pass


class InvalidState(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class RejectedChannel(CoolLabError):
    pass


class ConfigError(InvalidInput):
    pass


class ParseError(InvalidInput):
    def __init__(self, message: str, offset: int = None, source: str = None):
        super().__init__(message)
        self.offset = offset
        self.source = source


class ReportError(CoolLabError):
    pass
