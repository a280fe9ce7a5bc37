"""Exception types shared across the package."""


class CarbonPathError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(CarbonPathError):
    """Invalid or inconsistent scenario configuration."""


class CalibrationError(CarbonPathError):
    """Damage-model calibration points cannot be fit."""


class TrajectoryError(CarbonPathError):
    """Trajectory integration failed (abatement rate hit zero or blew up).

    Carries the time at which integration broke down in ``failure_time``.
    """

    def __init__(self, message, failure_time):
        super().__init__(f"{message} (t={failure_time:g})")
        self.failure_time = failure_time


class SolverError(CarbonPathError):
    """Boundary-value solve failed an internal consistency requirement."""


class InfeasibleBracketError(SolverError):
    """Shooting bracket could not be expanded to straddle the target."""


class ScenarioRunError(CarbonPathError):
    """A batch run failed; the message identifies the offending scenario."""
