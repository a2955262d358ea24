"""Cached per-q artifacts shared across the test modules."""

import functools

from ovoidcodes import codes as co
from ovoidcodes import geometry as ge
from ovoidcodes.fields import context_for_order


@functools.lru_cache(maxsize=None)
def ctx(q):
    return context_for_order(q)


@functools.lru_cache(maxsize=None)
def code(q):
    return co.CodeHandle.from_generator(ctx(q), co.build_generator_matrix(ctx(q)))


@functools.lru_cache(maxsize=None)
def geo_dist(q):
    return co.weight_distribution_geometric(ctx(q))


@functools.lru_cache(maxsize=None)
def orbit_report(q):
    return ge.orbit_decompose(ctx(q))


@functools.lru_cache(maxsize=None)
def sections(q):
    return ge.section_sweep(ctx(q))


# Expected weight distributions, frozen as plain dicts.
TABLE1 = {
    2: {0: 1, 2: 36, 4: 126, 6: 84, 8: 9},
    3: {0: 1, 15: 1512, 18: 2184, 21: 2808, 27: 56},
    4: {0: 1, 44: 18720, 48: 16380, 52: 30240, 64: 195},
    5: {0: 1, 95: 126000, 100: 78120, 105: 186000, 125: 504},
    7: {0: 1, 287: 2123856, 294: 823536, 301: 2815344, 343: 2064},
    8: {0: 1, 440: 6435072, 448: 2097144, 456: 8241408, 512: 3591},
    9: {0: 1, 639: 17029440, 648: 4782960, 657: 21228480, 729: 5840},
}

DUAL_A5 = {4: 13104, 5: 390600, 7: 40353264}
