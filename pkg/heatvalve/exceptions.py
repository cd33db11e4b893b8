from typing import Optional


class HeatValveError(Exception):
    pass


class InvalidDimensionError(HeatValveError, ValueError):
    pass


class LayoutError(HeatValveError, ValueError):
    pass


class SymmetryError(HeatValveError, ValueError):
    pass


class DomainError(HeatValveError, ValueError):
    pass


class NumericalAccuracyError(HeatValveError):
    def __init__(self, message: str, estimated_error: Optional[float] = None):
        super().__init__(message)
        self.estimated_error = estimated_error


class ConsistencyError(HeatValveError):
    pass


class DegenerateKernelError(HeatValveError):
    def __init__(self, kernel_dimension: int):
        super().__init__(
            f"Liouvillian has a {kernel_dimension}-dimensional numerical kernel; "
            "the steady state is not unique"
        )
        self.kernel_dimension = kernel_dimension


class StabilityError(HeatValveError):
    pass


class ConfigError(HeatValveError):
    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


class SweepFailureError(HeatValveError):
    def __init__(self, failed: int, total: int, records: Optional[list] = None):
        super().__init__(f"{failed} of {total} flux points failed")
        self.failed = failed
        self.total = total
        self.records = records or []


class OutputError(HeatValveError):
    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class PositivityWarning(UserWarning):
    def __init__(self, min_eigenvalue: float):
        super().__init__(f"steady state has a negative eigenvalue {min_eigenvalue:.3e}")
        self.min_eigenvalue = min_eigenvalue
