"""A closed grammar of convex functions on the complex plane.

Reports must be reproducible, so the averaged-inequality checks accept
only these descriptors rather than arbitrary callables:

* ``power``: ``|z - center| ** q`` with ``q >= 1``
* ``hinge``: ``max(Re(conj(h) z) + offset, 0)``
* ``exp``:   ``exp(Re(conj(h) z))``

All three are nonnegative, so they are admissible on both sides of the
unequal-length (l < m) inequalities as well.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDescriptor

__all__ = ['ConvexFunction', 'random_battery', 'averaged_slack']

KINDS = ('power', 'hinge', 'exp')


@dataclass(frozen=True)
class ConvexFunction:
    kind: str
    center: complex = 0j
    q: float = 1.0
    h: complex = 1 + 0j
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidDescriptor(f'unknown kind {self.kind!r}; expected one of {KINDS}')
        vals = (complex(self.center), float(self.q), complex(self.h), float(self.offset))
        if not all(np.isfinite(v) for v in vals):
            raise InvalidDescriptor('descriptor parameters must be finite')
        if self.kind == 'power' and self.q < 1:
            raise InvalidDescriptor(f'power descriptor needs q >= 1, got {self.q}')

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == 'power':
            return np.abs(z - self.center) ** self.q
        proj = (np.conj(self.h) * z).real
        if self.kind == 'hinge':
            return np.maximum(proj + self.offset, 0.0)
        return np.exp(proj)

    def to_dict(self):
        if self.kind == 'power':
            return {'kind': 'power', 'center': [self.center.real, self.center.imag],
                    'q': self.q}
        d = {'kind': self.kind, 'h': [complex(self.h).real, complex(self.h).imag]}
        if self.kind == 'hinge':
            d['offset'] = self.offset
        return d

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or 'kind' not in d:
            raise InvalidDescriptor(f'not a descriptor: {d!r}')
        try:
            kw = {'kind': d['kind']}
            if 'center' in d:
                kw['center'] = complex(*d['center'])
            if 'h' in d:
                kw['h'] = complex(*d['h'])
            if 'q' in d:
                kw['q'] = float(d['q'])
            if 'offset' in d:
                kw['offset'] = float(d['offset'])
        except (TypeError, ValueError) as exc:
            raise InvalidDescriptor(f'bad descriptor {d!r}: {exc}') from None
        extra = set(d) - {'kind', 'center', 'h', 'q', 'offset'}
        if extra:
            raise InvalidDescriptor(f'unexpected descriptor keys {sorted(extra)}')
        return cls(**kw)


def random_battery(rng, scale=1.0, size=6):
    """A mixed battery whose parameters live at the given length scale."""
    out = []
    for i in range(size):
        kind = KINDS[i % 3]
        c = scale * complex(*rng.uniform(-1, 1, 2))
        h = complex(*rng.uniform(-1, 1, 2)) / max(scale, 1e-300)
        if kind == 'power':
            out.append(ConvexFunction('power', center=c, q=float(rng.choice([1.0, 1.5, 2.0]))))
        elif kind == 'hinge':
            out.append(ConvexFunction('hinge', h=h, offset=float(rng.uniform(-1, 1))))
        else:
            out.append(ConvexFunction('exp', h=h))
    return out


def averaged_slack(f, small, large):
    """mean f(large) - mean f(small) together with both means."""
    left = float(np.mean(f(np.asarray(small)))) if len(small) else 0.0
    right = float(np.mean(f(np.asarray(large))))
    return left, right, right - left
