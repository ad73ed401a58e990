"""Exception hierarchy shared by all diffrace modules."""


class DiffraceError(Exception):
    """Base class for every error raised by this package."""


class SceneShapeError(DiffraceError):
    """Solenoid/flux lists have mismatched lengths or are empty."""


class FluxOutOfRange(DiffraceError):
    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"flux[{index}] = {value!r} is outside the open interval (0, 1)")


class DuplicateSolenoid(DiffraceError):
    def __init__(self, i: int, j: int):
        self.indices = (i, j)
        super().__init__(f"solenoids {i} and {j} coincide (within tolerance)")


class CollinearTriple(DiffraceError):
    def __init__(self, i: int, j: int, k: int):
        self.indices = (i, j, k)
        super().__init__(f"solenoids ({i}, {j}, {k}) are collinear (within tolerance)")


class ConfigError(DiffraceError):
    """Aggregate of every violation found while validating a scene."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid scene: {lines}")


class GeometricAngle(DiffraceError):
    """A passage through a vertex is straight (angle at +-pi), not diffractive."""


class PointOnSegment(DiffraceError):
    """A reference point lies on the segment it should subtend."""


class InvalidSequence(DiffraceError):
    """A cyclic vertex sequence repeats an index in consecutive positions."""


class InstanceTooLarge(DiffraceError):
    """Brute-force search would enumerate too many words."""


class ExcisionTooLarge(DiffraceError):
    """Principal-value excision radius exceeds half an incident segment."""


class DegenerateHessian(DiffraceError):
    """A finite-difference Hessian has a near-zero eigenvalue."""


class NoConvergence(DiffraceError):
    """Panel doubling hit its iteration cap before reaching tolerance."""


class GridTooCoarse(DiffraceError):
    """Sample step too large for the requested band limit."""


class WindowTooWeak(DiffraceError):
    """Low-frequency cutoff vanishes too slowly for an orbit's corner count."""


class EpsilonTooLarge(DiffraceError):
    """Strip margin epsilon is not smaller than the orbit length."""


class SingleSolenoid(DiffraceError):
    """No closed orbit exists with fewer than two solenoids."""


class BadDelta(DiffraceError):
    """Counting exponent delta must lie strictly inside (0, 1)."""


class SchemaError(DiffraceError):
    """Aggregate of all violations found while parsing a run configuration."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(f"{path}: {msg}" for path, msg in self.violations)
        super().__init__(f"invalid run configuration: {lines}")


class UnknownKey(SchemaError):
    """All violations are unrecognized keys (typically typos)."""
