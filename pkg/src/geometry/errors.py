"""
geometry/errors.py

Exception hierarchy shared by the geometry modules. Checkers report failed
checks through their return values; these exceptions are reserved for inputs
the computations cannot proceed with.
"""


class GeometryError(Exception):
    pass


class InputError(GeometryError):
    pass


class DegenerateMetricError(GeometryError):
    pass


class DegenerateRestrictionError(DegenerateMetricError):
    pass


class InvalidInvolutionError(GeometryError):
    pass


class UnsupportedSignatureError(GeometryError):
    pass


class FrameError(GeometryError):
    pass
