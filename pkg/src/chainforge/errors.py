"""Exception hierarchy. Every error carries the offending data as attributes."""


class ChainforgeError(Exception):
    def __init__(self, msg="", **data):
        super().__init__(msg or self.__class__.__name__)
        self.data = data
        for k, v in data.items():
            setattr(self, k, v)


class DuplicateId(ChainforgeError):
    pass


class UnknownPredecessor(ChainforgeError):
    pass


class NotMaximumAntichain(ChainforgeError):
    pass


class NoPerfectMatching(ChainforgeError):
    pass


class NotACore(ChainforgeError):
    pass


class WidthTooLarge(ChainforgeError):
    pass


class LevelMismatch(ChainforgeError):
    pass


class NotIntervalOrder(ChainforgeError):
    pass


class OrderChanged(ChainforgeError):
    pass


class IllegalMove(ChainforgeError):
    pass


class AlgorithmIllegalMove(IllegalMove):
    pass


class SpoilerIllegalMove(IllegalMove):
    pass


class NotUpGrowing(SpoilerIllegalMove):
    pass


class IllegalColoring(IllegalMove):
    pass


class UnmatchedCase(ChainforgeError):
    pass


class LocalColoringFailed(ChainforgeError):
    pass


class EdgeHasPrivateColor(ChainforgeError):
    pass


class AlgorithmCheated(ChainforgeError):
    pass


class ParseError(ChainforgeError):
    pass
