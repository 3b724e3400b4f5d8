# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python table kernels in pyops.py.

Semantics must match pyops exactly; tests/test_kernels.py compares the two
implementations on shared workloads.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

IMPL = "compiled"


def element_orders(const cnp.int32_t[:, :] mul):
    cdef Py_ssize_t n = mul.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] orders = np.zeros(n, dtype=np.int32)
    cdef Py_ssize_t x, acc, k
    for x in range(n):
        k = 1
        acc = x
        while acc != 0:
            acc = mul[acc, x]
            k += 1
        orders[x] = k
    return orders


def closure(const cnp.int32_t[:, :] mul, seeds):
    cdef Py_ssize_t n = mul.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] queue = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] seed_arr = np.asarray(
        [int(s) for s in seeds], dtype=np.int64
    )
    cdef Py_ssize_t head = 0, tail = 0, x, y, i
    cdef Py_ssize_t n_seeds = seed_arr.shape[0]
    mask[0] = 1
    queue[tail] = 0
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for i in range(n_seeds):
            y = mul[x, seed_arr[i]]
            if not mask[y]:
                mask[y] = 1
                queue[tail] = y
                tail += 1
    return np.asarray(mask).view(bool)


def extend_subgroup(const cnp.int32_t[:, :] mul, base_elems, base_gens, extra_gens):
    cdef Py_ssize_t n = mul.shape[0]
    cdef const cnp.int64_t[:] elems = np.ascontiguousarray(base_elems, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] gens = np.asarray(
        [int(g) for g in base_gens] + [int(g) for g in extra_gens], dtype=np.int64
    )
    cdef cnp.ndarray[cnp.int64_t, ndim=1] coset_of = np.full(n, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] reps = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t n_elems = elems.shape[0]
    cdef Py_ssize_t n_gens = gens.shape[0]
    cdef Py_ssize_t head = 0, tail = 0, r, t, i, j, n_cosets = 0
    for j in range(n_elems):
        coset_of[elems[j]] = 0
    reps[tail] = 0
    tail += 1
    n_cosets = 1
    while head < tail:
        r = reps[head]
        head += 1
        for i in range(n_gens):
            t = mul[r, gens[i]]
            if coset_of[t] < 0:
                for j in range(n_elems):
                    coset_of[mul[elems[j], t]] = n_cosets
                reps[tail] = t
                tail += 1
                n_cosets += 1
    return np.asarray(coset_of) >= 0


def orbits(perms, Py_ssize_t n):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] rep = np.full(n, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] queue = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] pmat
    if len(perms) == 0:
        return np.arange(n, dtype=np.int64)
    pmat = np.ascontiguousarray(
        np.vstack([np.asarray(p, dtype=np.int64) for p in perms])
    )
    cdef Py_ssize_t n_perms = pmat.shape[0]
    cdef Py_ssize_t start, head, tail, x, y, i
    for start in range(n):
        if rep[start] >= 0:
            continue
        rep[start] = start
        head = 0
        tail = 0
        queue[tail] = start
        tail += 1
        while head < tail:
            x = queue[head]
            head += 1
            for i in range(n_perms):
                y = pmat[i, x]
                if rep[y] < 0:
                    rep[y] = start
                    queue[tail] = y
                    tail += 1
    return rep


def centralizer_section(
    const cnp.int32_t[:, :] mul, const cnp.int32_t[:] inv, h_elems, k_mask
):
    cdef Py_ssize_t n = mul.shape[0]
    cdef const cnp.int64_t[:] hs = np.ascontiguousarray(h_elems, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] km = np.asarray(k_mask, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t n_h = hs.shape[0]
    cdef Py_ssize_t g, j, h, ig, c
    cdef bint ok
    for g in range(n):
        ig = inv[g]
        ok = True
        for j in range(n_h):
            h = hs[j]
            c = mul[mul[mul[ig, h], g], inv[h]]
            if not km[c]:
                ok = False
                break
        out[g] = 1 if ok else 0
    return np.asarray(out).view(bool)


def hom_extend(
    const cnp.int32_t[:, :] mul_src, const cnp.int32_t[:, :] mul_dst, gens, imgs
):
    cdef Py_ssize_t n = mul_src.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] image = np.full(n, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] queue = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] g_arr = np.asarray(
        [int(g) for g in gens], dtype=np.int64
    )
    cdef cnp.ndarray[cnp.int64_t, ndim=1] i_arr = np.asarray(
        [int(i) for i in imgs], dtype=np.int64
    )
    cdef Py_ssize_t head = 0, tail = 0, x, fx, y, fy, i
    cdef Py_ssize_t n_gens = g_arr.shape[0]
    image[0] = 0
    queue[tail] = 0
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        fx = image[x]
        for i in range(n_gens):
            y = mul_src[x, g_arr[i]]
            fy = mul_dst[fx, i_arr[i]]
            if image[y] < 0:
                image[y] = fy
                queue[tail] = y
                tail += 1
            elif image[y] != fy:
                return None
    return np.asarray(image) >= 0, np.asarray(image)


def coset_ids(const cnp.int32_t[:, :] mul, members):
    cdef Py_ssize_t n = mul.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] elems = np.flatnonzero(
        np.asarray(members, dtype=bool)
    ).astype(np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ids = np.full(n, -1, dtype=np.int64)
    cdef Py_ssize_t n_elems = elems.shape[0]
    cdef Py_ssize_t x, j, k = 0
    reps = []
    for x in range(n):
        if ids[x] >= 0:
            continue
        for j in range(n_elems):
            ids[mul[elems[j], x]] = k
        reps.append(x)
        k += 1
    return ids, reps


def subgroup_table(const cnp.int32_t[:, :] mul, elems_in):
    cdef const cnp.int64_t[:] elems = np.ascontiguousarray(elems_in, dtype=np.int64)
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t m = elems.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pos = np.full(n, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] sub = np.empty((m, m), dtype=np.int32)
    cdef Py_ssize_t i, j
    for i in range(m):
        pos[elems[i]] = i
    for i in range(m):
        for j in range(m):
            sub[i, j] = pos[mul[elems[i], elems[j]]]
    return np.asarray(sub)
