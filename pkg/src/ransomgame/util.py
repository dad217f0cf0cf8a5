"""
A collection of utility functions:

.. autosummary::
   make_stream
   substream
   ransom_to_u
   u_to_ransom
   format_number
   parallel_map
   split

"""
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def make_stream(seed):
    """Return a counter-based random stream for *seed*.

    The stream is a :class:`numpy.random.Generator` backed by
    :class:`numpy.random.Philox`. Equal seeds yield equal draws::

        >>> from ransomgame.util import make_stream
        >>> a, b = make_stream(7), make_stream(7)
        >>> bool(a.random() == b.random())
        True

    Raise a :exc:`ValueError` if ``seed < 0``.

    """
    if seed < 0:
        raise ValueError('seed(=%s) must be >= 0.' % seed)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def substream(seed, index):
    """Return the *index*-th independent child stream of *seed*.

    Children are spawned from the :class:`numpy.random.SeedSequence` of
    *seed*, so chunk ``i`` of a parallel job draws the same numbers no
    matter which thread runs it or how many threads there are.

    """
    if index < 0:
        raise ValueError('index(=%s) must be >= 0.' % index)
    child = np.random.SeedSequence(seed).spawn(index + 1)[index]
    return np.random.Generator(np.random.Philox(child))


def ransom_to_u(r):
    """Map a ransom ``r >= 0`` to the plotting coordinate ``1 / (1 + r)``."""
    return 1.0 / (1.0 + np.asarray(r, dtype=float))


def u_to_ransom(u):
    """Inverse of :func:`ransom_to_u` for ``u`` in ``(0, 1]``."""
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0) or np.any(u > 1):
        raise ValueError('u must lie in (0, 1].')
    return 1.0 / u - 1.0


def format_number(value):
    """Format *value* with the shortest decimal that round-trips.

    ``None`` becomes the empty string, booleans become ``true``/``false``
    and infinities ``inf``/``-inf``.

    """
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def parallel_map(fn, items, workers=1):
    """Return ``[fn(item) for item in items]``, computed by *workers*
    threads.

    Results come back in the order of *items* regardless of which thread
    finished first.

    """
    items = list(items)
    if workers < 1:
        raise ValueError('workers(=%s) must be >= 1.' % workers)
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def split(values, parts):
    """Split the array *values* into at most *parts* contiguous, non-empty
    pieces."""
    values = np.asarray(values)
    parts = max(1, min(parts, len(values)))
    return [piece for piece in np.array_split(values, parts) if len(piece)]
