"""Exception hierarchy. Each error carries the CLI exit code it maps to."""


class ArtifactError(Exception):
    exit_code = 2


class ParseError(ArtifactError):
    exit_code = 1


class PreconditionError(ArtifactError):
    exit_code = 2


class InternalError(ArtifactError):
    exit_code = 3


class NotBijective(PreconditionError):
    def __init__(self, color: int):
        super().__init__(f"color {color} is not a bijection")
        self.color = color


class Disconnected(PreconditionError):
    pass


class OpenGraph(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    pass


class DisconnectedBoundary(PreconditionError):
    pass


class LabelMismatch(PreconditionError):
    pass


class UnreducedTemplate(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class UnknownFamily(PreconditionError):
    pass


class OddEulerCharacteristic(InternalError):
    pass


class BoundaryChanged(InternalError):
    pass


class MismatchBug(InternalError):
    pass


class SelfTestFailed(InternalError):
    pass
