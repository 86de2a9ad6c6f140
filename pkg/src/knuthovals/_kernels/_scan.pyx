# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels for the hyperoval searches.

Same contract as the numpy fallback: candidates are odometer-indexed
coefficient vectors, contrib[i][d] is the value table of digit i = d, and
star[a][x] = x ⋆ a.  One candidate is tested at a time with early exits,
which makes the compiled path much faster than the blocked fallback on the
full 32^5 domain.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


def scan_type_a(const unsigned short[:, :, ::1] contrib,
                const unsigned short[:, ::1] star,
                long start, long stop):
    cdef int n = contrib.shape[0]
    cdef long domain = contrib.shape[1]
    cdef int q = contrib.shape[2]
    cdef unsigned short *prefix = <unsigned short *> malloc(q * sizeof(unsigned short))
    if prefix is NULL:
        raise MemoryError()
    cdef list out = []
    cdef long idx = start, block_end, t
    cdef int i, x, a, zeros, d0
    cdef unsigned short v
    cdef const unsigned short *c0
    cdef const unsigned short *srow
    cdef bint ok
    try:
        while idx < stop:
            # rebuild the prefix table (digits 1..n-1) for this run of digit 0
            t = idx / domain
            for x in range(q):
                prefix[x] = 0
            for i in range(1, n):
                c0 = &contrib[i, t % domain, 0]
                for x in range(q):
                    prefix[x] ^= c0[x]
                t = t / domain
            d0 = <int> (idx % domain)
            block_end = idx - (idx % domain) + domain
            if block_end > stop:
                block_end = stop
            while idx < block_end:
                c0 = &contrib[0, d0, 0]
                # additive permutation: only x=0 maps to 0
                zeros = 0
                for x in range(q):
                    if (prefix[x] ^ c0[x]) == 0:
                        zeros += 1
                        if zeros > 1:
                            break
                ok = zeros == 1
                if ok:
                    for a in range(1, q):
                        srow = &star[a, 0]
                        zeros = 0
                        for x in range(q):
                            if (prefix[x] ^ c0[x]) == srow[x]:
                                zeros += 1
                                if zeros > 2:
                                    break
                        if zeros != 2:
                            ok = False
                            break
                if ok:
                    out.append(idx)
                idx += 1
                d0 += 1
        return out
    finally:
        free(prefix)


def scan_type_b(const unsigned short[:, :, ::1] contrib,
                const unsigned short[:, ::1] star,
                long start, long stop):
    cdef int n = contrib.shape[0]
    cdef long domain = contrib.shape[1]
    cdef int q = contrib.shape[2]
    cdef unsigned short *prefix = <unsigned short *> malloc(q * sizeof(unsigned short))
    if prefix is NULL:
        raise MemoryError()
    cdef list out = []
    cdef long idx = start, block_end, t
    cdef int i, x, a, zeros, d0, ones, alpha
    cdef const unsigned short *c0
    cdef const unsigned short *srow
    cdef bint ok
    try:
        while idx < stop:
            t = idx / domain
            for x in range(q):
                prefix[x] = 0
            for i in range(1, n):
                c0 = &contrib[i, t % domain, 0]
                for x in range(q):
                    prefix[x] ^= c0[x]
                t = t / domain
            d0 = <int> (idx % domain)
            block_end = idx - (idx % domain) + domain
            if block_end > stop:
                block_end = stop
            while idx < block_end:
                c0 = &contrib[0, d0, 0]
                # two-to-one: exactly two zeros of L
                zeros = 0
                for x in range(q):
                    if (prefix[x] ^ c0[x]) == 0:
                        zeros += 1
                        if zeros > 2:
                            break
                ok = zeros == 2
                if ok:
                    ones = 0
                    alpha = 0
                    for a in range(1, q):
                        srow = &star[a, 0]
                        zeros = 0
                        for x in range(q):
                            if srow[prefix[x] ^ c0[x]] == x:
                                zeros += 1
                                if zeros > 2:
                                    break
                        if zeros == 1:
                            ones += 1
                            if ones > 1:
                                ok = False
                                break
                            alpha = a
                        elif zeros != 2:
                            ok = False
                            break
                    if ok and ones != 1:
                        ok = False
                if ok:
                    out.append((idx, alpha))
                idx += 1
                d0 += 1
        return out
    finally:
        free(prefix)
