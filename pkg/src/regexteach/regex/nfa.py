"""Thompson-style NFA compilation and subset-simulation matching.

Simulation advances one state-set frontier per input character (|x|+1
frontiers total), so matching is linear in |x| times the automaton size and
never backtracks.
"""

from functools import lru_cache

from .nodes import AnyChar, CharClass, Concat, Literal, Node, RegexAst, Repeat


class NFA:
    """Epsilon-NFA with a single accept state.

    ``edges[s]`` lists ``(matcher, dst)`` pairs where ``matcher`` is a
    frozenset of characters or ``None`` for the any-character wildcard.
    ``closure[s]`` is the precomputed epsilon closure of state ``s``.
    """

    __slots__ = ("edges", "closure", "start", "accept")

    def __init__(self, edges, closure, start, accept):
        self.edges = edges
        self.closure = closure
        self.start = start
        self.accept = accept

    @property
    def n_states(self) -> int:
        return len(self.edges)

    def initial(self) -> frozenset:
        return self.closure[self.start]

    def step(self, frontier: frozenset, ch: str) -> frozenset:
        out: set = set()
        for state in frontier:
            for matcher, dst in self.edges[state]:
                if matcher is None or ch in matcher:
                    out.update(self.closure[dst])
        return frozenset(out)

    def accepts(self, frontier: frozenset) -> bool:
        return self.accept in frontier


class _Builder:
    def __init__(self):
        self.eps: list = []
        self.edges: list = []

    def new_state(self) -> int:
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1

    def add_eps(self, a: int, b: int):
        self.eps[a].append(b)

    def add_edge(self, a: int, matcher, b: int):
        self.edges[a].append((matcher, b))

    def emit(self, node: Node) -> tuple[int, int]:
        if isinstance(node, Literal):
            return self.emit_symbol(frozenset(node.char))
        if isinstance(node, CharClass):
            return self.emit_symbol(node.chars)
        if isinstance(node, AnyChar):
            return self.emit_symbol(None)
        if isinstance(node, Concat):
            start = cur = self.new_state()
            for part in node.parts:
                s, a = self.emit(part)
                self.add_eps(cur, s)
                cur = a
            return start, cur
        if isinstance(node, Repeat):
            return self.emit_repeat(node)
        raise TypeError(f"unknown node type: {type(node).__name__}")

    def emit_symbol(self, matcher) -> tuple[int, int]:
        s = self.new_state()
        a = self.new_state()
        self.add_edge(s, matcher, a)
        return s, a

    def emit_repeat(self, node: Repeat) -> tuple[int, int]:
        start = cur = self.new_state()
        for _ in range(node.min):
            s, a = self.emit(node.child)
            self.add_eps(cur, s)
            cur = a
        accept = self.new_state()
        if node.max is None:
            hub = self.new_state()
            self.add_eps(cur, hub)
            s, a = self.emit(node.child)
            self.add_eps(hub, s)
            self.add_eps(a, hub)
            self.add_eps(hub, accept)
        else:
            for _ in range(node.max - node.min):
                self.add_eps(cur, accept)
                s, a = self.emit(node.child)
                self.add_eps(cur, s)
                cur = a
            self.add_eps(cur, accept)
        return start, accept

    def closures(self) -> tuple:
        out = []
        for state in range(len(self.eps)):
            seen = {state}
            stack = [state]
            while stack:
                for nxt in self.eps[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            out.append(frozenset(seen))
        return tuple(out)


@lru_cache(maxsize=None)
def compile_nfa(r: RegexAst) -> NFA:
    b = _Builder()
    start, accept = b.emit(r.root)
    return NFA(tuple(tuple(e) for e in b.edges), b.closures(), start, accept)


def simulate(nfa: NFA, x: str) -> bool:
    """Whole-string acceptance via subset simulation."""
    frontier = nfa.initial()
    for ch in x:
        if not frontier:
            return False
        frontier = nfa.step(frontier, ch)
    return nfa.accepts(frontier)


def matches(r: RegexAst, x: str) -> bool:
    """Whether ``x`` is in the whole-string language of ``r``."""
    return simulate(compile_nfa(r), x)
