"""Digit automata with output: construction from a morphism, minimization,
base change, and kernel enumeration.

The automaton reads the most significant digit first.  The start state must
loop on digit 0, so leading zeros never matter; every construction here
preserves that property, and the kernel walk relies on it.
"""

from dataclasses import dataclass

from .words import Coding, UniformMorphism


@dataclass(frozen=True)
class Dfao:
    """Deterministic finite automaton with output over digits {0..b-1}.

    transitions[s][d] is the successor of state s on digit d; outputs[s] is
    the emitted field element.  All states are reachable from start and
    transitions[start][0] == start.
    """

    transitions: tuple
    outputs: tuple
    start: int

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0 or len(self.outputs) != n:
            raise ValueError("transition and output tables disagree")
        b = len(self.transitions[0])
        for row in self.transitions:
            if len(row) != b:
                raise ValueError("ragged transition table")
            for s in row:
                if not 0 <= s < n:
                    raise ValueError("transition to unknown state")
        if self.transitions[self.start][0] != self.start:
            raise ValueError("start state must be stable under digit 0")
        seen = {self.start}
        frontier = [self.start]
        while frontier:
            s = frontier.pop()
            for t in self.transitions[s]:
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
        if len(seen) != n:
            raise ValueError("unreachable states present")

    @property
    def digit_count(self):
        return len(self.transitions[0])

    @property
    def n_states(self):
        return len(self.transitions)

    def run(self, digits):
        s = self.start
        for d in digits:
            s = self.transitions[s][d]
        return s

    def evaluate(self, i: int):
        """Sequence term a_i: feed the base-b digits of i, MSD first."""
        if i < 0:
            raise ValueError("index must be nonnegative")
        b = self.digit_count
        digits = []
        while i:
            digits.append(i % b)
            i //= b
        return self.outputs[self.run(reversed(digits))]


def build_dfao(sigma: UniformMorphism, coding: Coding, seed: int) -> Dfao:
    """Direct-reading automaton of the coded fixed point.

    States are the letters reachable from the seed; the digit-d successor of
    letter c is the d-th letter of sigma(c).  Prolongability of the seed
    gives the required 0-loop at the start state.
    """
    if sigma.images[seed][0] != seed:
        raise ValueError(f"morphism is not prolongable on seed {seed}")
    order = [seed]
    index = {seed: 0}
    pos = 0
    while pos < len(order):
        c = order[pos]
        pos += 1
        for d in sigma.images[c]:
            if d not in index:
                index[d] = len(order)
                order.append(d)
    transitions = tuple(tuple(index[d] for d in sigma.images[c]) for c in order)
    outputs = tuple(coding(c) for c in order)
    return Dfao(transitions, outputs, 0)


def minimize(dfao: Dfao):
    """Moore partition refinement; returns (minimal automaton, state count)."""
    n = dfao.n_states
    block = [0] * n
    outputs = {}
    for s in range(n):
        key = dfao.outputs[s]
        if key not in outputs:
            outputs[key] = len(outputs)
        block[s] = outputs[key]
    while True:
        sigs = {}
        new_block = [0] * n
        for s in range(n):
            sig = (block[s], tuple(block[t] for t in dfao.transitions[s]))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_block[s] = sigs[sig]
        if len(sigs) == len(set(block)):
            break
        block = new_block

    # canonical numbering: breadth-first from the start block, digits ascending
    rep = {}
    for s in range(n):
        rep.setdefault(block[s], s)
    order = [block[dfao.start]]
    number = {block[dfao.start]: 0}
    pos = 0
    while pos < len(order):
        bl = order[pos]
        pos += 1
        for d in range(dfao.digit_count):
            nb = block[dfao.transitions[rep[bl]][d]]
            if nb not in number:
                number[nb] = len(order)
                order.append(nb)
    transitions = tuple(
        tuple(number[block[dfao.transitions[rep[bl]][d]]]
              for d in range(dfao.digit_count))
        for bl in order)
    outputs = tuple(dfao.outputs[rep[bl]] for bl in order)
    minimal = Dfao(transitions, outputs, 0)
    return minimal, minimal.n_states


def rebase(dfao: Dfao, p: int) -> Dfao:
    """Equivalent automaton reading base-p digits, for b = p^j.

    Grouping p-ary digits into base-b digits aligns at the least significant
    end, so a direct reader cannot group as it goes.  Instead each state
    tracks j parallel runs, one per left-padding residue: slot l holds the
    base-b state of the run whose pending group is the last l digits read.
    Padding with zeros is harmless precisely because of the start 0-loop,
    and the slot indexed by buffer length 0 is always the completed run.
    """
    b = dfao.digit_count
    j = 0
    bb = b
    while bb % p == 0 and bb > 1:
        bb //= p
        j += 1
    if bb != 1 or j < 1:
        raise ValueError(f"digit count {b} is not a power of {p}")
    if j == 1:
        return dfao

    start_key = ((dfao.start,) * j, (0,) * (j - 1))
    index = {start_key: 0}
    keys = [start_key]
    transitions = []
    pos = 0
    while pos < len(keys):
        slots, tail = keys[pos]
        pos += 1
        row = []
        for d in range(p):
            digits = tail + (d,)
            value = 0
            for x in digits:
                value = value * p + x
            new_slots = (dfao.transitions[slots[j - 1]][value],) + slots[: j - 1]
            new_key = (new_slots, digits[1:])
            if new_key not in index:
                index[new_key] = len(keys)
                keys.append(new_key)
            row.append(index[new_key])
        transitions.append(tuple(row))
    outputs = tuple(dfao.outputs[slots[0]] for slots, _ in keys)
    return Dfao(tuple(transitions), outputs, 0)


@dataclass(frozen=True)
class KernelElement:
    """One subsequence (a_{b^n i + r}), held as its output function psi.

    psi maps each automaton state to the sequence value reached from it by
    the digit word witnessing (n, r); psi equality on all states decides
    subsequence equality exactly, thanks to the start 0-loop.
    """

    n: int
    r: int
    psi: tuple

    def is_constant(self):
        return len(set(self.psi)) == 1


@dataclass(frozen=True)
class KernelDescriptor:
    dfao: Dfao
    elements: tuple

    @property
    def cardinality(self):
        return len(self.elements)

    def element_prefix(self, element: KernelElement, length: int):
        """First terms of the subsequence the element stands for."""
        b = self.dfao.digit_count
        out = []
        for i in range(length):
            digits = []
            x = i
            while x:
                digits.append(x % b)
                x //= b
            out.append(element.psi[self.dfao.run(reversed(digits))])
        return tuple(out)


def kernel(dfao: Dfao) -> KernelDescriptor:
    """All distinct subsequences (a_{b^n i + r}), by closure under digits.

    Start from the output function and repeatedly precompose with the digit
    maps: O_d(psi) = psi . delta(., d) realizes r -> d*b^n + r one level up.
    Functions are compared on the full (reachable) state set, which is an
    exact equality test for the subsequences themselves.
    """
    psi0 = tuple(dfao.outputs)
    b = dfao.digit_count
    seen = {psi0: (0, 0)}
    order = [KernelElement(0, 0, psi0)]
    queue = [(psi0, 0, 0)]
    while queue:
        psi, n, r = queue.pop(0)
        for d in range(b):
            child = tuple(psi[dfao.transitions[s][d]] for s in range(dfao.n_states))
            if child not in seen:
                cn, cr = n + 1, d * b ** n + r
                seen[child] = (cn, cr)
                order.append(KernelElement(cn, cr, child))
                queue.append((child, cn, cr))
    return KernelDescriptor(dfao, tuple(order))
