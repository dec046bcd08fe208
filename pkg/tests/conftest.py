import numpy as np


class StubRng:
    """Scripted stand-in for a Generator; pops preset values per call."""

    def __init__(self, randoms=(), uniforms=(), normals=(), integers=(), choices=()):
        self._randoms = list(randoms)
        self._uniforms = list(uniforms)
        self._normals = list(normals)
        self._integers = list(integers)
        self._choices = list(choices)

    def random(self, size=None):
        if size is None:
            return self._randoms.pop(0)
        return np.array([self._randoms.pop(0) for _ in range(int(size))])

    def uniform(self, low=0.0, high=1.0, size=None):
        assert size is None
        return self._uniforms.pop(0)

    def normal(self, loc=0.0, scale=1.0, size=None):
        value = self._normals.pop(0)
        if np.ndim(scale) > 0:
            return np.broadcast_to(np.asarray(value, dtype=float), np.shape(scale)).copy()
        return value

    def integers(self, n, size=None):
        if size is None:
            return self._integers.pop(0)
        return np.array([self._integers.pop(0) for _ in range(int(size))])

    def choice(self, n, size=None, replace=True):
        return np.array(self._choices.pop(0))
