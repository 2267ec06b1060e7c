class WronskiError(Exception):
    """Base class of every mathematical failure raised by the package."""


class UsageError(WronskiError, ValueError):
    pass


class NotFertileError(WronskiError):
    def __init__(self, message='Wronskian equation has no polynomial solution', equations=None):
        super().__init__(message)
        self.equations = equations


class NormalizationImpossibleError(WronskiError):
    pass


class NotInCellError(WronskiError):
    pass


class NotInBetheCellError(WronskiError):
    pass


class PoleError(WronskiError):
    def __init__(self, position, triple):
        super().__init__(f'transition map has a pole at position {position}: ({", ".join(map(str, triple))})')
        self.position = position
        self.triple = tuple(triple)


class NoPathError(WronskiError):
    pass


class RankTooLargeError(WronskiError, ValueError):
    pass


class IrrationalSingularityError(WronskiError):
    def __init__(self, factor):
        super().__init__(f'Wronskian has non-rational roots (factor {factor})')
        self.factor = factor


class NonExactDivisionError(WronskiError):
    pass


class NotRegularPointError(WronskiError):
    pass


class CoincidentPointsError(WronskiError):
    pass


class InternalConsistencyError(WronskiError):
    pass


class RedrawExhaustedError(WronskiError):
    def __init__(self, what, max_redraws):
        super().__init__(f'{what}: no acceptable draw after {max_redraws} redraws')
        self.what = what
        self.max_redraws = max_redraws
