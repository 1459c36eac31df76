from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptySpectrum, NotNormalizable
from .linalg import as_rational, parse_vector


@dataclass(frozen=True)
class Spectrum:
    """A real spectrum, stored sorted in descending order."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(sorted((as_rational(x) for x in self.values), reverse=True))
        if not vals:
            raise EmptySpectrum("a spectrum needs at least one value")
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> Spectrum:
        return cls(parse_vector(text))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i) -> Fraction:
        return self.values[i]

    @property
    def normalized(self) -> bool:
        return self.values[0] == 1 and all(abs(x) <= 1 for x in self.values)

    @property
    def spectral_radius(self) -> Fraction:
        return max(abs(x) for x in self.values)

    def power_sum(self, k: int) -> Fraction:
        return sum((x**k for x in self.values), Fraction(0))

    def scaled(self, c) -> Spectrum:
        c = as_rational(c)
        return Spectrum(tuple(c * x for x in self.values))

    def with_zeros(self, count: int) -> Spectrum:
        return Spectrum(self.values + (Fraction(0),) * count)


def as_spectrum(values: Spectrum | Iterable | str) -> Spectrum:
    if isinstance(values, Spectrum):
        return values
    if isinstance(values, str):
        return Spectrum.parse(values)
    return Spectrum(tuple(values))


def normalize(values) -> tuple[Spectrum, Fraction]:
    """Divide by the largest value; return the normalized spectrum and that scale."""
    sigma = as_spectrum(values)
    top = sigma.values[0]
    if top <= 0:
        raise NotNormalizable(f"largest value {top} is not positive")
    if sigma.spectral_radius != top:
        raise NotNormalizable(f"spectral radius {sigma.spectral_radius} is not in the spectrum")
    return sigma.scaled(1 / top), top
