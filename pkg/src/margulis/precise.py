"""Extended-precision word evaluation for the Margulis invariant.

Long words have translation parts of size e^{l}, so a double-precision product
only carries alpha to about 1e-16 e^{l}.  Here generators are lifted exactly to
mpmath, inverses are taken in mpmath, and alpha is read off with the fixed
covector of the linear part, which keeps additivity on powers and invariance
under conjugation exact up to the working precision.
"""
import mpmath
import numpy as np

from .affine import neutral_vector
from .words import check_reduced

DPS = 60


class PreciseAffine:
    def __init__(self, linear, trans):
        self.linear = linear
        self.trans = trans

    @classmethod
    def lift(cls, F):
        lin = mpmath.matrix([[mpmath.mpf(float(x)) for x in row] for row in np.asarray(F.linear)])
        tr = mpmath.matrix([mpmath.mpf(float(x)) for x in np.asarray(F.trans)])
        return cls(lin, tr)

    def __matmul__(self, other):
        return PreciseAffine(self.linear * other.linear, self.trans + self.linear * other.trans)

    def inverse(self):
        inv = mpmath.inverse(self.linear)
        return PreciseAffine(inv, -(inv * self.trans))

    def to_float(self):
        lin = np.array([[float(self.linear[i, j]) for j in range(3)] for i in range(3)])
        return lin, np.array([float(self.trans[i]) for i in range(3)])


def _kernel(m):
    """Kernel vector of a rank-2 3x3 matrix via the largest cross product of rows."""
    rows = [mpmath.matrix([m[i, 0], m[i, 1], m[i, 2]]) for i in range(3)]
    best = None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        r, s = rows[i], rows[j]
        c = mpmath.matrix([r[1] * s[2] - r[2] * s[1], r[2] * s[0] - r[0] * s[2], r[0] * s[1] - r[1] * s[0]])
        n = mpmath.norm(c)
        if best is None or n > best[1]:
            best = (c, n)
    return best[0] / best[1]


def _q(v):
    return mpmath.matrix([v[0], v[1], -v[2]])


def alpha_precise(F, reference=None):
    """alpha = l(u) with l the fixed covector, l(nu) = 1 and <nu, nu> = 1.

    ``reference`` is a double-precision neutral vector used only for the sign.
    """
    with mpmath.workdps(DPS):
        m = F.linear - mpmath.eye(3)
        v = _kernel(m)
        cov = _kernel(m.T)
        if reference is not None and sum(v[i] * reference[i] for i in range(3)) < 0:
            v = -v
        qn = v[0] ** 2 + v[1] ** 2 - v[2] ** 2
        v = v / mpmath.sqrt(qn)
        scale = sum(cov[i] * v[i] for i in range(3))
        return sum(cov[i] * F.trans[i] for i in range(3)) / scale


def evaluate_precise(group, w):
    check_reduced(w)
    with mpmath.workdps(DPS):
        gens = [PreciseAffine.lift(g) for g in group.generators]
        invs = [g.inverse() for g in gens]
        out = PreciseAffine(mpmath.eye(3), mpmath.matrix([0, 0, 0]))
        for s in w:
            out = out @ (gens[s - 1] if s > 0 else invs[-s - 1])
        return out


def word_invariant(group, w, eta=None):
    """alpha of the word (conjugated by the affine isometry ``eta`` if given), as a float."""
    from .schottky import evaluate

    ref = neutral_vector(evaluate(group, w).linear)
    with mpmath.workdps(DPS):
        F = evaluate_precise(group, w)
        if eta is not None:
            e = PreciseAffine.lift(eta)
            F = e @ F @ e.inverse()
            ref = np.asarray(eta.linear) @ ref
        return float(alpha_precise(F, ref))
