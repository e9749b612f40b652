"""Finite words, uniform morphisms, codings and fixed-point streams.

Internal letters are small ints in {0..m-1}; a Coding maps them to field
elements at the boundary, keeping the combinatorial alphabet separate from
the output alphabet.
"""

from dataclasses import dataclass

from .ffield import FieldDescriptor, FieldElement

Word = tuple  # tuple of ints


class NotProlongableError(ValueError):
    def __init__(self, seed, image):
        self.seed = seed
        self.image = image
        super().__init__(
            f"morphism is not prolongable on {seed}: image {''.join(map(str, image))} "
            f"does not extend the seed")


def word_from_digits(text: str) -> Word:
    """Parse '0012' or comma-separated '0,0,1,2' into a word."""
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(int(part) for part in text.split(","))
    return tuple(int(ch) for ch in text)


def word_str(word: Word) -> str:
    if any(letter > 9 for letter in word):
        return ",".join(str(letter) for letter in word)
    return "".join(str(letter) for letter in word)


@dataclass(frozen=True)
class UniformMorphism:
    """Morphism sending every letter to a word of the same length b."""

    images: tuple

    def __post_init__(self):
        if not self.images:
            raise ValueError("morphism needs at least one image")
        b = len(self.images[0])
        if b < 1:
            raise ValueError("images must be nonempty")
        m = len(self.images)
        for letter, image in enumerate(self.images):
            if len(image) != b:
                raise ValueError(
                    f"image of {letter} has length {len(image)}, expected {b}")
            for c in image:
                if not 0 <= c < m:
                    raise ValueError(f"letter {c} out of range in image of {letter}")

    @classmethod
    def from_strings(cls, images):
        return cls(tuple(word_from_digits(s) for s in images))

    @property
    def m(self):
        return len(self.images)

    @property
    def b(self):
        return len(self.images[0])

    def apply(self, word: Word) -> Word:
        out = []
        for c in word:
            out.extend(self.images[c])
        return tuple(out)

    def iterate(self, word: Word, n: int) -> Word:
        for _ in range(n):
            word = self.apply(word)
        return word

    def compose(self, other: "UniformMorphism") -> "UniformMorphism":
        """self after other: letter -> self(other(letter))."""
        if other.m != self.m:
            raise ValueError("composition needs a common alphabet")
        return UniformMorphism(tuple(self.apply(img) for img in other.images))

    def last_letter(self, letter: int) -> int:
        return self.images[letter][-1]


def apply_morphism(sigma: UniformMorphism, word: Word) -> Word:
    for c in word:
        if not 0 <= c < sigma.m:
            raise ValueError(f"letter {c} out of range for alphabet of size {sigma.m}")
    return sigma.apply(word)


@dataclass(frozen=True)
class Coding:
    """Letter-to-field-element output map."""

    table: tuple

    def __post_init__(self):
        if not self.table:
            raise ValueError("empty coding")
        field = self.table[0].field
        for elt in self.table:
            if not isinstance(elt, FieldElement) or elt.field is not field:
                raise ValueError("coding values must lie in one field")

    @classmethod
    def from_ints(cls, field: FieldDescriptor, values):
        return cls(tuple(field.element(v) for v in values))

    @classmethod
    def identity(cls, field: FieldDescriptor, m: int):
        return cls(tuple(field.element(i) for i in range(m)))

    @property
    def field(self):
        return self.table[0].field

    @property
    def m(self):
        return len(self.table)

    def __call__(self, letter: int) -> FieldElement:
        return self.table[letter]

    def map(self, word: Word):
        return tuple(self.table[c] for c in word)


@dataclass(frozen=True)
class MorphismDiagnostics:
    prolongable: bool
    reachable: frozenset
    problems: tuple

    @property
    def ok(self):
        return not self.problems


def validate(sigma: UniformMorphism, seed: int) -> MorphismDiagnostics:
    """Check prolongability on the seed and report the reachable letters."""
    problems = []
    if not 0 <= seed < sigma.m:
        return MorphismDiagnostics(False, frozenset(), (f"seed {seed} out of range",))
    image = sigma.images[seed]
    prolongable = image[0] == seed and len(image) >= 2
    if image[0] != seed:
        problems.append(
            f"image of seed {seed} is {word_str(image)}, which does not start with {seed}")
    elif len(image) < 2:
        problems.append("seed image has no tail to iterate on")
    frontier = [seed]
    reachable = {seed}
    while frontier:
        c = frontier.pop()
        for d in sigma.images[c]:
            if d not in reachable:
                reachable.add(d)
                frontier.append(d)
    return MorphismDiagnostics(prolongable, frozenset(reachable), tuple(problems))


class SequenceStream:
    """Prefixes of the coded fixed point, grown on demand.

    Extension appends the images of successive buffered letters, so memory
    stays linear in the longest prefix requested.  Single writer; returned
    prefixes are immutable snapshots.
    """

    def __init__(self, morphism: UniformMorphism, coding: Coding, seed: int):
        if coding.m != morphism.m:
            raise ValueError("coding and morphism disagree on alphabet size")
        diag = validate(morphism, seed)
        if not diag.prolongable:
            raise NotProlongableError(seed, morphism.images[seed])
        self.morphism = morphism
        self.coding = coding
        self.seed = seed
        self._buf = list(morphism.images[seed])
        self._src = 1  # images of letters < _src are already in the buffer

    def _ensure(self, n: int):
        buf = self._buf
        images = self.morphism.images
        while len(buf) < n:
            buf.extend(images[buf[self._src]])
            self._src += 1

    def prefix(self, n: int) -> Word:
        """First n internal letters of the fixed point."""
        self._ensure(n)
        return tuple(self._buf[:n])

    def coded_prefix(self, n: int):
        """First n letters after applying the coding."""
        self._ensure(n)
        table = self.coding.table
        return tuple(table[c] for c in self._buf[:n])


def fixed_point_prefix(stream: SequenceStream, n: int):
    """First n coded letters; repeated calls never change earlier letters."""
    return stream.coded_prefix(n)
