# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot inner loops.

Semantics mirror ``quasiwide._kernels.pure`` exactly; that module is the
reference implementation and the parity tests hold both backends to
identical outputs. Adjacency arrives as a row-per-vertex uint64 bitset
matrix (built once per graph by the wrapper); vertex ids index rows and
bits alike.
"""

from math import comb

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np

cimport numpy as cnp

ctypedef unsigned long long u64

cnp.import_array()


cdef inline bint _eval(
    const u64* bits,
    Py_ssize_t words,
    int n,
    int kind,
    int i_split,
    int arity,
    const Py_ssize_t* args,
):
    """One formula evaluation over the bitset matrix.

    kind 0: edge atom on (args[0], args[1]). kind 1 (phi): a witness
    adjacent to the first i_split arguments and none of the rest; kind 2
    (psi) mirrors the split. Word-at-a-time with early exit.
    """
    cdef Py_ssize_t u, v, w, j
    cdef Py_ssize_t p0, p1, g0, g1
    cdef u64 acc
    if kind == 0:
        u = args[0]
        v = args[1]
        return (bits[u * words + (v >> 6)] >> (v & 63)) & 1
    if kind == 1:
        p0 = 0
        p1 = i_split
        g0 = i_split
        g1 = arity
    else:
        p0 = i_split
        p1 = arity
        g0 = 0
        g1 = i_split
    for w in range(words):
        if w == words - 1 and (n & 63) != 0:
            acc = ((<u64>1) << (n & 63)) - 1
        else:
            acc = <u64>0xFFFFFFFFFFFFFFFFULL
        for j in range(p0, p1):
            acc &= bits[args[j] * words + w]
            if acc == 0:
                break
        if acc == 0:
            continue
        for j in range(g0, g1):
            acc &= ~bits[args[j] * words + w]
            if acc == 0:
                break
        if acc:
            return True
    return False


def eval_formula(
    cnp.ndarray[u64, ndim=2] bits,
    int n,
    int kind,
    int i_split,
    int arity,
    args,
):
    cdef Py_ssize_t cargs[8]
    cdef int i
    if arity > 8:
        raise ValueError("native backend supports arity up to 8")
    for i in range(arity):
        cargs[i] = args[i]
    return bool(
        _eval(<const u64*>cnp.PyArray_DATA(bits), bits.shape[1], n, kind, i_split, arity, cargs)
    )


def tree_round(
    cnp.ndarray[u64, ndim=2] bits,
    int n,
    seq,
    int kind,
    int i_split,
    int arity,
    tail,
):
    """One type-tree insertion round; returns the longest branch (earliest
    deepest leaf wins).

    Signature bits are packed into a little-endian word buffer and compared
    as bytes: equal byte keys mean equal evaluation patterns, which is all
    the tree structure depends on.
    """
    cdef const u64* B = <const u64*>cnp.PyArray_DATA(bits)
    cdef Py_ssize_t words = bits.shape[1]
    cdef int m = len(tail)
    cdef int q = arity - m
    cdef int t = q - 1
    cdef Py_ssize_t L = len(seq)
    cdef int s = t - 1 if t >= 1 else 0
    cdef Py_ssize_t cargs[8]
    cdef Py_ssize_t combo[8]
    cdef Py_ssize_t ctail[8]
    cdef int j, jj
    cdef Py_ssize_t cz, d, u_pool, nbits, bit, node, child_idx, plen
    cdef bint have_combo

    if arity > 8 or m > 7:
        raise ValueError("native backend supports arity up to 8")
    for j in range(m):
        ctail[j] = tail[j]

    cdef Py_ssize_t max_bits = comb(L - 1, s) if (t >= 1 and L >= 1) else 1
    cdef Py_ssize_t sig_words_cap = (max_bits + 63) // 64 + 1
    cdef u64* sig = <u64*>malloc(sig_words_cap * sizeof(u64))
    cdef Py_ssize_t* path = <Py_ssize_t*>malloc((L + 1) * sizeof(Py_ssize_t))
    if sig == NULL or path == NULL:
        free(sig)
        free(path)
        raise MemoryError()

    labels = [-1]
    parents = [-1]
    depths = [0]
    children = [{}]
    cdef Py_ssize_t best = 0
    cdef Py_ssize_t sig_words

    try:
        for z in seq:
            cz = z
            node = 0
            plen = 0
            while True:
                if node == 0 and t == 0:
                    cargs[0] = cz
                    for j in range(m):
                        cargs[j + 1] = ctail[j]
                    key = (
                        b"\x01"
                        if _eval(B, words, n, kind, i_split, arity, cargs)
                        else b"\x00"
                    )
                elif node == 0 or t == 0 or depths[node] < t:
                    key = b""
                else:
                    d = plen  # labels on the path; path[plen-1] is this node
                    u_pool = d - 1
                    nbits = comb(u_pool, s)
                    sig_words = (nbits + 63) // 64
                    if sig_words == 0:
                        sig_words = 1
                    memset(sig, 0, sig_words * sizeof(u64))
                    for j in range(s):
                        combo[j] = j
                    bit = 0
                    have_combo = True
                    while have_combo:
                        for j in range(s):
                            cargs[j] = path[combo[j]]
                        cargs[s] = path[d - 1]
                        cargs[s + 1] = cz
                        for j in range(m):
                            cargs[s + 2 + j] = ctail[j]
                        if _eval(B, words, n, kind, i_split, arity, cargs):
                            sig[bit >> 6] |= (<u64>1) << (bit & 63)
                        bit += 1
                        if s == 0:
                            have_combo = False
                        else:
                            j = s - 1
                            while j >= 0 and combo[j] == u_pool - s + j:
                                j -= 1
                            if j < 0:
                                have_combo = False
                            else:
                                combo[j] += 1
                                for jj in range(j + 1, s):
                                    combo[jj] = combo[jj - 1] + 1
                    key = PyBytes_FromStringAndSize(<char*>sig, sig_words * sizeof(u64))
                child = children[node].get(key)
                if child is None:
                    labels.append(cz)
                    parents.append(node)
                    depths.append(depths[node] + 1)
                    children.append({})
                    child_idx = len(labels) - 1
                    children[node][key] = child_idx
                    if depths[child_idx] > depths[best]:
                        best = child_idx
                    break
                node = child
                path[plen] = labels[node]
                plen += 1
    finally:
        free(sig)
        free(path)

    branch = []
    node = best
    while node != 0:
        branch.append(labels[node])
        node = parents[node]
    branch.reverse()
    return branch


def nr_masks(
    cnp.ndarray[cnp.int32_t, ndim=1] indptr,
    cnp.ndarray[cnp.int32_t, ndim=1] indices,
    int n,
    int r,
):
    """Closed r-ball of every vertex as an arbitrary-precision int bitmask."""
    if n == 0:
        return []
    cdef const cnp.int32_t* ip = <const cnp.int32_t*>cnp.PyArray_DATA(indptr)
    cdef const cnp.int32_t* ix = <const cnp.int32_t*>cnp.PyArray_DATA(indices)
    cdef Py_ssize_t words = (n + 63) // 64
    cdef cnp.ndarray[cnp.int32_t, ndim=1] dist = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] queue = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[u64, ndim=1] row = np.zeros(words, dtype=np.uint64)
    cdef cnp.int32_t* dp = <cnp.int32_t*>cnp.PyArray_DATA(dist)
    cdef cnp.int32_t* qp = <cnp.int32_t*>cnp.PyArray_DATA(queue)
    cdef u64* rp = <u64*>cnp.PyArray_DATA(row)
    cdef Py_ssize_t source, head, size, u, v, e
    masks = []
    for source in range(n):
        for u in range(n):
            dp[u] = -1
        memset(rp, 0, words * sizeof(u64))
        dp[source] = 0
        qp[0] = <cnp.int32_t>source
        rp[source >> 6] |= (<u64>1) << (source & 63)
        head = 0
        size = 1
        while head < size:
            u = qp[head]
            head += 1
            if dp[u] == r:
                continue
            for e in range(ip[u], ip[u + 1]):
                v = ix[e]
                if dp[v] < 0:
                    dp[v] = dp[u] + 1
                    qp[size] = <cnp.int32_t>v
                    size += 1
                    rp[v >> 6] |= (<u64>1) << (v & 63)
        masks.append(int.from_bytes(row.tobytes(), "little"))
    return masks
