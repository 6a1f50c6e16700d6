"""Exception hierarchy shared by every module of the package."""


class AfaError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class UnknownNode(AfaError):
    def __init__(self, node):
        super().__init__(f"unknown node: {node!r}")
        self.node = node


class ParseError(AfaError):
    """Malformed equation or formula text, with 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    def __init__(self, name, line=1, column=1):
        super().__init__(f"undeclared variable {name!r}", line, column)
        self.name = name


class NoRoot(AfaError):
    def __init__(self):
        super().__init__("no 'root' directive")


class CyclicInput(AfaError):
    def __init__(self):
        super().__init__("picture contains a cycle; collapse needs an acyclic graph")


class RankTooLarge(AfaError):
    def __init__(self, rank, budget):
        where = "formula" if rank is None else f"formula at rank {rank}"
        super().__init__(f"{where} exceeds the size budget of {budget} nodes")
        self.rank = rank
        self.budget = budget


class DuplicateName(AfaError):
    def __init__(self, name):
        super().__init__(f"event name already registered: {name!r}")
        self.name = name


class EmptyRegistry(AfaError):
    def __init__(self):
        super().__init__("cannot classify an empty registry")


class NotASystemMap(AfaError):
    pass
