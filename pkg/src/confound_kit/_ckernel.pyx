# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled campaign kernel.

Line-by-line transliteration of _pykernel.run_campaign; keep the two in
lockstep (same expressions, same operand order) so both backends return
bit-identical results.  setup.py disables FMA contraction for this file.
"""

from libc.stdint cimport uint64_t


cdef double DOUBLE_SCALE = 1.0 / 9007199254740992.0  # 2**-53

EQ_NONE, EQ_H1, EQ_H5 = 0, 1, 2
IRRELEVANT, NO_CONFOUNDING = 0, 1


cdef inline uint64_t _mix(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * (<uint64_t>0xBF58476D1CE4E5B9)
    z = (z ^ (z >> 27)) * (<uint64_t>0x94D049BB133111EB)
    return z ^ (z >> 31)


def run_campaign(int model, rep, int eq, int conclusion, long start, long count,
                 unsigned long long seed, double tol, int budget):
    """See _pykernel.run_campaign; identical contract and results."""
    cdef uint64_t GOLDEN = <uint64_t>0x9E3779B97F4A7C15
    cdef int rep1 = rep[1]
    cdef int rep2 = rep[2]
    cdef int rep3 = rep[3]
    cdef int rep4 = rep[4]
    cdef int rep5 = rep[5]
    cdef int rep6 = rep[6]
    cdef int nslots = 6 if model == 3 else 7
    cdef int slot_a[7]
    slot_a[0] = 0
    slot_a[1] = 1
    if model == 3:
        slot_a[2] = 3
        slot_a[3] = 4
        slot_a[4] = 5
        slot_a[5] = 6
        slot_a[6] = 6
    else:
        slot_a[2] = 2
        slot_a[3] = 3
        slot_a[4] = 4
        slot_a[5] = 5
        slot_a[6] = 6
    cdef double q[7]
    cdef double max_violation = 0.0
    cdef long failures = 0
    cdef long exhausted = 0
    cdef uint64_t state, z
    cdef long i
    cdef int attempt, j, k
    cdef bint accepted
    cdef double v0, v1, v2, v3, v4, v5, v6
    cdef double e0, e1, n0, n1, obs, target, mass0
    cdef double tb, ab
    cdef double p0, p1, p2, p3, p4, p5, p6, p7
    cdef double pe, pu, violation
    q[2] = 0.0
    with nogil:
        for i in range(start, start + count):
            state = _mix(seed + (<uint64_t>(i + 1)) * GOLDEN)
            accepted = False
            for attempt in range(budget + 1):
                for k in range(nslots):
                    j = slot_a[k]
                    state = state + GOLDEN
                    z = _mix(state)
                    q[j] = 0.01 + ((<double>(z >> 11)) * DOUBLE_SCALE) * 0.98
                v0 = q[0]
                v1 = q[rep1]
                v2 = q[rep2]
                v3 = q[rep3]
                v4 = q[rep4]
                v5 = q[rep5]
                v6 = q[rep6]
                if eq == 1:  # EQ_H1
                    if model == 1:
                        e0 = v1 * (1.0 - v0)
                        e1 = v2 * v0
                        n0 = (1.0 - v1) * (1.0 - v0)
                        n1 = (1.0 - v2) * v0
                        obs = (v3 * n0 + v4 * n1) / (n0 + n1)
                        v6 = (obs * (e0 + e1) - v5 * e0) / e1
                    elif model == 2:
                        obs = v3 * (1.0 - v1) + v4 * v1
                        v6 = (obs - v5 * (1.0 - v2)) / v2
                    else:
                        obs = v3 * (1.0 - v1) + v4 * v1
                        v6 = (obs - v5 * (1.0 - v1)) / v1
                    if 0.0 <= v6 <= 1.0:
                        accepted = True
                        break
                elif eq == 2:  # EQ_H5
                    if model == 1:
                        v5 = (v6 * v2 + v4 * (1.0 - v2) - v3 * (1.0 - v1)) / v1
                    elif model == 2:
                        target = (v6 * v2 * v0 + v4 * v1 * (1.0 - v0)) / (
                            v2 * v0 + v1 * (1.0 - v0)
                        )
                        mass0 = (1.0 - v2) * v0 + (1.0 - v1) * (1.0 - v0)
                        v5 = (target * mass0 - v3 * (1.0 - v1) * (1.0 - v0)) / (
                            (1.0 - v2) * v0
                        )
                    else:
                        v5 = v6 + (v4 - v3) * (1.0 - v0) / v0
                    if 0.0 <= v5 <= 1.0:
                        accepted = True
                        break
                else:
                    accepted = True
                    break
            if not accepted:
                exhausted += 1
                continue
            if model == 1:
                tb = 1.0 - v0
                p0 = tb * v1 * (1.0 - v5)
                p1 = tb * v1 * v5
                p2 = v0 * v2 * (1.0 - v6)
                p3 = v0 * v2 * v6
                p4 = tb * (1.0 - v1) * (1.0 - v3)
                p5 = tb * (1.0 - v1) * v3
                p6 = v0 * (1.0 - v2) * (1.0 - v4)
                p7 = v0 * (1.0 - v2) * v4
            elif model == 2:
                ab = 1.0 - v0
                p0 = v0 * (1.0 - v2) * (1.0 - v5)
                p1 = v0 * (1.0 - v2) * v5
                p2 = v0 * v2 * (1.0 - v6)
                p3 = v0 * v2 * v6
                p4 = ab * (1.0 - v1) * (1.0 - v3)
                p5 = ab * (1.0 - v1) * v3
                p6 = ab * v1 * (1.0 - v4)
                p7 = ab * v1 * v4
            else:
                ab = 1.0 - v0
                tb = 1.0 - v1
                p0 = v0 * tb * (1.0 - v5)
                p1 = v0 * tb * v5
                p2 = v0 * v1 * (1.0 - v6)
                p3 = v0 * v1 * v6
                p4 = ab * tb * (1.0 - v3)
                p5 = ab * tb * v3
                p6 = ab * v1 * (1.0 - v4)
                p7 = ab * v1 * v4
            pe = p0 + p1 + p2 + p3
            pu = p4 + p5 + p6 + p7
            obs = (p5 + p7) / pu
            if conclusion == 1:  # NO_CONFOUNDING
                violation = (p1 + p3) / pe - obs
            else:
                violation = (
                    (p5 / (p4 + p5)) * ((p0 + p1) / pe)
                    + (p7 / (p6 + p7)) * ((p2 + p3) / pe)
                    - obs
                )
            if violation < 0.0:
                violation = -violation
            if violation > tol:
                failures += 1
            if violation > max_violation:
                max_violation = violation
    return max_violation, failures, exhausted
