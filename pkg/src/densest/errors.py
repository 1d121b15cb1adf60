class InvalidSelectionError(ValueError):
    """A node selection is empty, too small, repeats ids or names unknown nodes."""


class InstanceInfeasibleError(RuntimeError):
    """No connected induced subgraph of the requested size could be grown."""


class EnumerationCapError(RuntimeError):
    """Brute-force enumeration refused because C(n, k) exceeds the cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"C(n, k) = {count} subsets exceeds the enumeration cap of {cap}")
        self.count = count
        self.cap = cap
