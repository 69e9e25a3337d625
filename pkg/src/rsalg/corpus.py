"""Builtin corpus: one group, one of each semilattice, a mixed monoid and a zero-bearing one."""

from .semigroup import brandt_unital, cyclic_group, semilattice_chain, symmetric_inverse_monoid

BUILDERS = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "semilattice2": lambda: semilattice_chain(2),
    "semilattice3": lambda: semilattice_chain(3),
    "I2": lambda: symmetric_inverse_monoid(2),
    "brandt2": lambda: brandt_unital(2),
}

NAMES = tuple(sorted(BUILDERS))


def builtin(name):
    try:
        return BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin {name!r}; choose from {', '.join(NAMES)} or 'all'") from None


def resolve(name):
    """'all' expands to the whole registry, sorted by name."""
    if name == "all":
        return [builtin(k) for k in NAMES]
    return [builtin(name)]
