# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: exponent vectors are packed into one 64-bit word.

Each variable gets ``64 // n`` bits (at most 32).  When an operand would not
fit, or ``p`` is too large for 64-bit products, the call is delegated to the
pure-Python kernel so results never depend on the backend.
"""

from libc.stdint cimport uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

from . import _pykernels

cdef uint64_t P_LIMIT = 1ULL << 31


cdef int _field_bits(int n):
    cdef int b = 64 // n
    return 32 if b > 32 else b


cdef list _max_exps(dict terms, int n):
    cdef list mx = [0] * n
    cdef int i
    for m in terms:
        for i in range(n):
            if m[i] > mx[i]:
                mx[i] = m[i]
    return mx


cdef bint _fits(list ma, list mb, int bits):
    cdef int i
    limit = (1 << bits) - 1
    for i in range(len(ma)):
        if ma[i] + mb[i] > limit:
            return False
    return True


cdef void _pack(dict terms, int n, int bits, vector[uint64_t]& keys, vector[uint64_t]& coeffs):
    cdef uint64_t k
    cdef int i
    keys.reserve(len(terms))
    coeffs.reserve(len(terms))
    for m, c in terms.items():
        k = 0
        for i in range(n):
            k = (k << bits) | <uint64_t>m[i]
        keys.push_back(k)
        coeffs.push_back(<uint64_t>c)


cdef tuple _unpack(uint64_t k, int n, int bits, uint64_t mask):
    cdef list out = [0] * n
    cdef int i
    for i in range(n - 1, -1, -1):
        out[i] = <long long>(k & mask)
        k >>= bits
    return tuple(out)


cdef dict _collect(unordered_map[uint64_t, uint64_t]& acc, int n, int bits):
    cdef dict out = {}
    cdef uint64_t mask = (1ULL << bits) - 1 if bits < 64 else <uint64_t>-1
    cdef unordered_map[uint64_t, uint64_t].iterator it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[_unpack(deref(it).first, n, bits, mask)] = <long long>deref(it).second
        inc(it)
    return out


def mul(dict a, dict b, p):
    if not a or not b:
        return {}
    if p >= P_LIMIT:
        return _pykernels.mul(a, b, p)
    cdef int n = len(next(iter(a)))
    cdef int bits = _field_bits(n)
    if not _fits(_max_exps(a, n), _max_exps(b, n), bits):
        return _pykernels.mul(a, b, p)
    cdef uint64_t pp = p
    cdef vector[uint64_t] ka, ca, kb, cb
    _pack(a, n, bits, ka, ca)
    _pack(b, n, bits, kb, cb)
    cdef unordered_map[uint64_t, uint64_t] acc
    cdef size_t i, j, na = ka.size(), nb = kb.size()
    cdef uint64_t* slot
    cdef uint64_t ci
    acc.reserve(min(na * nb, <size_t>(1 << 22)))
    for i in range(na):
        ci = ca[i]
        for j in range(nb):
            slot = &acc[ka[i] + kb[j]]
            slot[0] = (slot[0] + ci * cb[j]) % pp
    return _collect(acc, n, bits)


def mul_trunc(dict a, dict b, p, bound):
    if not a or not b:
        return {}
    if p >= P_LIMIT:
        return _pykernels.mul_trunc(a, b, p, bound)
    cdef int n = len(next(iter(a)))
    cdef int bits = _field_bits(n)
    if not _fits(_max_exps(a, n), _max_exps(b, n), bits):
        return _pykernels.mul_trunc(a, b, p, bound)
    cdef uint64_t pp = p
    cdef uint64_t bnd = bound if bound < (1 << bits) else (1 << bits)
    cdef uint64_t mask = (1ULL << bits) - 1
    cdef vector[uint64_t] ka, ca, kb, cb
    _pack(a, n, bits, ka, ca)
    _pack(b, n, bits, kb, cb)
    cdef unordered_map[uint64_t, uint64_t] acc
    cdef size_t i, j, na = ka.size(), nb = kb.size()
    cdef uint64_t* slot
    cdef uint64_t k, kk, ci
    cdef int v
    cdef bint ok
    for i in range(na):
        ci = ca[i]
        for j in range(nb):
            k = ka[i] + kb[j]
            kk = k
            ok = True
            for v in range(n):
                if (kk & mask) >= bnd:
                    ok = False
                    break
                kk >>= bits
            if not ok:
                continue
            slot = &acc[k]
            slot[0] = (slot[0] + ci * cb[j]) % pp
    return _collect(acc, n, bits)


def frob_split(dict terms, q):
    cdef dict parts = {}
    cdef long long qq, e
    cdef int i, n
    cdef list alpha, beta
    if q >= (1 << 62):
        return _pykernels.frob_split(terms, q)
    qq = q
    for m, c in terms.items():
        n = len(m)
        alpha = [0] * n
        beta = [0] * n
        for i in range(n):
            e = m[i]
            alpha[i] = e % qq
            beta[i] = e // qq
        key = tuple(alpha)
        part = parts.get(key)
        if part is None:
            parts[key] = {tuple(beta): c}
        else:
            part[tuple(beta)] = c
    return parts


def frob_power(dict terms, q):
    cdef dict out = {}
    cdef int i, n
    cdef list m2
    for m, c in terms.items():
        n = len(m)
        m2 = [0] * n
        for i in range(n):
            m2[i] = m[i] * q
        out[tuple(m2)] = c
    return out
