"""Hot loops of the flag-extension search.

An automorphism (or isomorphism, or embedding) of a connected map is fixed by
the image of a single flag.  Every search in :mod:`tiler.symmetry` therefore
reduces to: walk a spanning tree of the source flags, push a candidate image
of the root through the destination involutions, then test that the resulting
flag assignment commutes with all three involutions and is injective.

Two interchangeable backends are provided.  The numba one loops candidate by
candidate; the numpy one vectorises across candidates, level by level of the
spanning tree.  Set ``TILER_NUMBA=0`` in the environment to force the numpy
path (it is also used automatically when numba is not importable).
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

NUMBA_ENABLED = HAVE_NUMBA and os.environ.get("TILER_NUMBA", "1").lower() not in ("0", "false", "no", "off")

# cap on candidates x flags held in memory at once by the numpy backend
_NUMPY_CHUNK_CELLS = 1 << 22


def set_backend(name):
    """Select ``"numba"`` or ``"numpy"`` at runtime; returns the previous name."""
    global NUMBA_ENABLED
    previous = backend()
    if name == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not available")
        NUMBA_ENABLED = True
    elif name == "numpy":
        NUMBA_ENABLED = False
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def backend():
    return "numba" if NUMBA_ENABLED else "numpy"


def spanning_tree(src, s2_mask, root=0):
    """BFS tree over flags of ``src`` (shape ``(3, F)``).

    ``s2_mask[x]`` says whether the ``s2`` move out of flag ``x`` may be used
    (boundary flags are fixed by ``s2`` and carry no information).  Returns
    ``(order, parent, gen, depth)`` where ``order[t]`` is the t-th reached
    flag, ``parent[t]`` the flag it was reached from, ``gen[t]`` the
    involution used.  Flags not reachable from ``root`` are absent.
    """
    n = src.shape[1]
    seen = np.zeros(n, dtype=bool)
    order = [root]
    parent = [root]
    gen = [0]
    depth = [0]
    seen[root] = True
    head = 0
    while head < len(order):
        x = order[head]
        d = depth[head]
        head += 1
        for k in range(3):
            if k == 2 and not s2_mask[x]:
                continue
            y = int(src[k, x])
            if not seen[y]:
                seen[y] = True
                order.append(y)
                parent.append(x)
                gen.append(k)
                depth.append(d + 1)
    return (np.asarray(order, dtype=np.int64), np.asarray(parent, dtype=np.int64),
            np.asarray(gen, dtype=np.int64), np.asarray(depth, dtype=np.int64))


def _extend_candidates_py(order, parent, gen, src, dst, s2_mask, candidates):
    n_src = src.shape[1]
    n_dst = dst.shape[1]
    valid = np.zeros(len(candidates), dtype=np.bool_)
    phi = np.empty(n_src, dtype=np.int64)
    used = np.zeros(n_dst, dtype=np.bool_)
    for c in range(len(candidates)):
        phi[order[0]] = candidates[c]
        for t in range(1, len(order)):
            phi[order[t]] = dst[gen[t], phi[parent[t]]]
        ok = True
        for x in range(n_src):
            y = phi[x]
            if used[y]:
                ok = False
                break
            used[y] = True
        for x in range(n_src):
            used[phi[x]] = False
        if ok:
            for k in range(3):
                for x in range(n_src):
                    if k == 2 and not s2_mask[x]:
                        continue
                    if phi[src[k, x]] != dst[k, phi[x]]:
                        ok = False
                        break
                if not ok:
                    break
        valid[c] = ok
    return valid


def _extend_one_py(order, parent, gen, dst, candidate, n_src):
    phi = np.empty(n_src, dtype=np.int64)
    phi[order[0]] = candidate
    for t in range(1, len(order)):
        phi[order[t]] = dst[gen[t], phi[parent[t]]]
    return phi


if HAVE_NUMBA:
    _extend_candidates_nb = njit(cache=True, nogil=True)(_extend_candidates_py)
    _extend_one_nb = njit(cache=True, nogil=True)(_extend_one_py)


def _extend_candidates_np(order, parent, gen, depth, src, dst, s2_mask, candidates):
    n_src = src.shape[1]
    candidates = np.asarray(candidates, dtype=np.int64)
    valid = np.zeros(len(candidates), dtype=bool)
    if len(candidates) == 0:
        return valid
    # group tree nodes by (depth, generator) once
    steps = []
    for d in range(1, int(depth.max()) + 1 if len(depth) else 1):
        at = depth == d
        for k in range(3):
            sel = at & (gen == k)
            if sel.any():
                steps.append((k, order[sel], parent[sel]))
    checks = []
    for k in range(3):
        xs = np.arange(n_src) if k < 2 else np.flatnonzero(s2_mask)
        checks.append((k, xs, src[k, xs]))
    chunk = max(1, _NUMPY_CHUNK_CELLS // max(n_src, 1))
    for lo in range(0, len(candidates), chunk):
        cand = candidates[lo:lo + chunk]
        phi = np.empty((len(cand), n_src), dtype=np.int64)
        phi[:, order[0]] = cand
        for k, nodes, parents in steps:
            phi[:, nodes] = dst[k][phi[:, parents]]
        ok = np.ones(len(cand), dtype=bool)
        for k, xs, images in checks:
            ok &= np.all(phi[:, images] == dst[k][phi[:, xs]], axis=1)
        if ok.any():
            srt = np.sort(phi[ok], axis=1)
            ok[ok] = np.all(srt[:, 1:] != srt[:, :-1], axis=1)
        valid[lo:lo + chunk] = ok
    return valid


def extend_candidates(tree, src, dst, s2_mask, candidates):
    """Boolean mask: which root images extend to a valid flag morphism."""
    order, parent, gen, depth = tree
    if len(order) != src.shape[1]:
        raise ValueError("source flag set is not connected")
    candidates = np.ascontiguousarray(candidates, dtype=np.int64)
    s2_mask = np.ascontiguousarray(s2_mask, dtype=np.bool_)
    if NUMBA_ENABLED:
        return _extend_candidates_nb(order, parent, gen, src, dst, s2_mask, candidates)
    return _extend_candidates_np(order, parent, gen, depth, src, dst, s2_mask, candidates)


def extend_one(tree, dst, candidate, n_src):
    order, parent, gen, _ = tree
    if NUMBA_ENABLED:
        return _extend_one_nb(order, parent, gen, dst, np.int64(candidate), n_src)
    return _extend_one_py(order, parent, gen, dst, candidate, n_src)
