"""First-Fit: put each point on the oldest chain that still accepts it."""


class FirstFit:
    name = "first-fit"

    def __init__(self):
        self._idx = {}
        self._chains = []  # bitsets over arrival indices

    def assign(self, x, down, up=()):
        i = len(self._idx)
        self._idx[x] = i
        comp = 0
        for y in down:
            comp |= 1 << self._idx[y]
        for y in up:
            comp |= 1 << self._idx[y]
        for k, m in enumerate(self._chains):
            if not (m & ~comp):
                self._chains[k] = m | (1 << i)
                return k + 1
        self._chains.append(1 << i)
        return len(self._chains)


def first_fit(state, x, down, up=()):
    """Functional form: ``state`` is a FirstFit instance; returns the index."""
    return state.assign(x, down, up)
