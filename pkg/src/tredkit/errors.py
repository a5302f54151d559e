"""Exception types raised across tredkit."""


class TredkitError(Exception):
    pass


class ParseError(TredkitError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NotStronglyConnected(TredkitError):
    pass


class NotAcyclic(TredkitError):
    pass


class ArcNotInGraph(TredkitError):
    pass


class Unreachable(TredkitError):
    def __init__(self, node: int):
        super().__init__(f"node {node} is not reachable")
        self.node = node


class NoArborescence(TredkitError):
    pass


class MissingWitness(TredkitError):
    pass


class CycleSearchBudgetExceeded(TredkitError):
    pass


class TooLarge(TredkitError):
    pass


class Infeasible(TredkitError):
    pass


class DomainError(TredkitError, ValueError):
    pass


class EmptyGraph(TredkitError):
    pass
