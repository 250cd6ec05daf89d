"""Built-in example subshifts."""

from .language import Subshift, builtin_oracle


def golden_mean():
    """The SFT on ``{1, 2}`` forbidding ``22``."""
    return Subshift.from_matrix([[1, 1], [1, 0]], ["1", "2"])


def even_shift():
    """Sofic shift on ``{0, 1}``: runs of 1 between 0s have even length."""
    return Subshift.from_graph(["0", "1"], ["A", "B"],
                               [("A", "0", "A"), ("A", "1", "B"), ("B", "1", "A")])


def full_shift(n=2):
    return Subshift.from_matrix([[1] * n for _ in range(n)], [str(i) for i in range(n)])


def dyck(depth=10):
    return Subshift.from_oracle(builtin_oracle("dyck2", depth))


def beta_golden(depth=10):
    return Subshift.from_oracle(builtin_oracle("beta-golden", depth))


BUILTINS = {
    "golden": golden_mean,
    "even": even_shift,
    "full2": full_shift,
    "dyck2": dyck,
    "beta-golden": beta_golden,
}
