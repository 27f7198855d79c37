"""Reference mean operation counts used by the table-reproduction recipes.

Values are the previously reported means this project reproduces; deviations
against them are emitted alongside fresh measurements.  Comparison and
exchange references exist for the eleven baseline sequences; exchange-op
references (and the chain-variant rows) come from the companion experiment
set.  ``None`` marks cells with no usable reference.

The exchange reference for ours-b10000-comp at N=10000 is omitted: the
reported figure exceeds the comparison count, which is impossible under the
move-based accounting here (every move is preceded by a successful
comparison), so it cannot correspond to this measure.
"""

from __future__ import annotations

# (sequence, n, cost) -> reference mean;  cost in {"comparisons", "exchanges",
# "exchange_ops"}
REFERENCE_COUNTS: dict[tuple[str, int, str], float] = {}


def _fill(cost: str, n: int, table: dict[str, float]) -> None:
    for name, value in table.items():
        REFERENCE_COUNTS[(name, n, cost)] = value


# comparisons
_fill("comparisons", 20, {
    "ours-a128-comp": 76, "ours-a1000-comp": 76, "ours-a1000-time": 79,
    "ours-b10000-comp": 76, "ciura-128": 76, "ciura-1000": 76, "ciura-large": 76,
    "tokuda": 76, "pratt-25": 111, "pratt-23": 136, "pratt-34": 95,
    "pratt-25-chain": 133, "pratt-34-chain": 150,
})
_fill("comparisons", 128, {
    "ours-a128-comp": 998, "ours-a1000-comp": 1004, "ours-a1000-time": 1035,
    # the two reported figures for ours-b10000-comp disagree (1096 vs 1003);
    # direct measurement lands on 1003 +/- 2, so that one is kept
    "ours-b10000-comp": 1003, "ciura-128": 998, "ciura-1000": 1006, "ciura-large": 1004,
    "tokuda": 1020, "pratt-25": 1732, "pratt-23": 2209, "pratt-34": 1424,
    "pratt-25-chain": 1861, "pratt-34-chain": 1825,
})
_fill("comparisons", 200, {
    "ours-a128-comp": 1786, "ours-a1000-comp": 1787, "ours-a1000-time": 1832,
    "ours-b10000-comp": 1775, "ciura-128": 1800, "ciura-1000": 1787, "ciura-large": 1794,
    "tokuda": 1808, "pratt-25": 3207, "pratt-23": 4095, "pratt-34": 2593,
    "pratt-25-chain": 3408, "pratt-34-chain": 3223,
})
_fill("comparisons", 1000, {
    "ours-a128-comp": 13250, "ours-a1000-comp": 12941, "ours-a1000-time": 13193,
    "ours-b10000-comp": 12980, "ciura-128": 13300, "ciura-1000": 12918,
    "ciura-large": 13035, "tokuda": 13116, "pratt-25": 26211, "pratt-23": 34380,
    "pratt-34": 20974, "pratt-25-chain": 27208, "pratt-34-chain": 24161,
})
_fill("comparisons", 2000, {
    "ours-a128-comp": 30530, "ours-a1000-comp": 29596, "ours-a1000-time": 30120,
    "ours-b10000-comp": 29643, "ciura-128": 30359, "ciura-1000": 29534,
    "ciura-large": 29567, "tokuda": 29888, "pratt-25": 62722, "pratt-23": 82785,
    "pratt-34": 50038, "pratt-25-chain": 64722, "pratt-34-chain": 56417,
})
_fill("comparisons", 5000, {
    "ours-a128-comp": 91122, "ours-a1000-comp": 86821, "ours-a1000-time": 87455,
    "ours-b10000-comp": 86514, "ciura-128": 88193, "ciura-1000": 86641,
    "ciura-large": 86232, "tokuda": 86838, "pratt-25": 194196, "pratt-23": 259088,
    "pratt-34": 154298, "pratt-25-chain": 199181, "pratt-34-chain": 170256,
})
_fill("comparisons", 10000, {
    "ours-a128-comp": 206356, "ours-a1000-comp": 196336, "ours-a1000-time": 194052,
    "ours-b10000-comp": 192029, "ciura-128": 195256, "ciura-1000": 193778,
    "ciura-large": 191435, "tokuda": 192574, "pratt-25": 450131, "pratt-23": 604502,
    "pratt-34": 355382, "pratt-25-chain": 460081, "pratt-34-chain": 387340,
})

# exchanges (single-position element moves)
_fill("exchanges", 20, {
    "ours-a128-comp": 38, "ours-a1000-comp": 39, "ours-a1000-time": 39,
    "ours-b10000-comp": 33, "ciura-128": 37, "ciura-1000": 39, "ciura-large": 39,
    "tokuda": 37, "pratt-25": 27, "pratt-23": 25, "pratt-34": 29,
})
_fill("exchanges", 128, {
    "ours-a128-comp": 531, "ours-a1000-comp": 516, "ours-a1000-time": 468,
    "ours-b10000-comp": 535, "ciura-128": 531, "ciura-1000": 519, "ciura-large": 516,
    "tokuda": 490, "pratt-25": 345, "pratt-23": 333, "pratt-34": 374,
})
_fill("exchanges", 200, {
    "ours-a128-comp": 948, "ours-a1000-comp": 919, "ours-a1000-time": 846,
    "ours-b10000-comp": 960, "ciura-128": 970, "ciura-1000": 920, "ciura-large": 907,
    "tokuda": 891, "pratt-25": 610, "pratt-23": 589, "pratt-34": 660,
})
_fill("exchanges", 1000, {
    "ours-a128-comp": 7847, "ours-a1000-comp": 7004, "ours-a1000-time": 6461,
    "ours-b10000-comp": 7245, "ciura-128": 7003, "ciura-1000": 7002, "ciura-large": 6701,
    "tokuda": 6556, "pratt-25": 4318, "pratt-23": 4253, "pratt-34": 4671,
})
_fill("exchanges", 2000, {
    "ours-a128-comp": 18611, "ours-a1000-comp": 16234, "ours-a1000-time": 14913,
    "ours-b10000-comp": 17241, "ciura-128": 15987, "ciura-1000": 16138,
    "ciura-large": 15427, "tokuda": 14952, "pratt-25": 9755, "pratt-23": 9669,
    "pratt-34": 10543,
})
_fill("exchanges", 5000, {
    "ours-a128-comp": 57728, "ours-a1000-comp": 50349, "ours-a1000-time": 44305,
    "ours-b10000-comp": 57388, "ciura-128": 46689, "ciura-1000": 47852,
    "ciura-large": 45347, "tokuda": 44116, "pratt-25": 28195, "pratt-23": 28354,
    "pratt-34": 30448,
})
_fill("exchanges", 10000, {
    "ours-a128-comp": 132351, "ours-a1000-comp": 119012, "ours-a1000-time": 98952,
    "ciura-128": 105544, "ciura-1000": 111338, "ciura-large": 101680,
    "tokuda": 98071, "pratt-25": 62191, "pratt-23": 66923, "pratt-34": 63272,
})

# exchange operations (decomposed-assignment model)
_fill("exchange_ops", 20, {
    "ours-a128-comp": 83, "ours-a1000-comp": 83, "ours-b10000-comp": 85,
    "ciura-128": 83, "ciura-1000": 85, "ciura-large": 85, "tokuda": 83,
    "pratt-25": 79, "pratt-25-chain": 85, "pratt-23": 78, "pratt-34": 77,
    "pratt-34-chain": 80,
})
_fill("exchange_ops", 128, {
    "ours-a128-comp": 1088, "ours-a1000-comp": 1091, "ours-b10000-comp": 1096,
    "ciura-128": 1090, "ciura-1000": 1086, "ciura-large": 1085, "tokuda": 1061,
    "pratt-25": 1003, "pratt-25-chain": 998, "pratt-23": 1001, "pratt-34": 1002,
    "pratt-34-chain": 1016,
})
_fill("exchange_ops", 200, {
    "ours-a128-comp": 1923, "ours-a1000-comp": 1905, "ours-b10000-comp": 1937,
    "ciura-128": 1923, "ciura-1000": 1907, "ciura-large": 1898, "tokuda": 1910,
    "pratt-25": 1770, "pratt-25-chain": 1757, "pratt-23": 1768, "pratt-34": 1773,
    "pratt-34-chain": 1792,
})
_fill("exchange_ops", 1000, {
    "ours-a128-comp": 14657, "ours-a1000-comp": 14020, "ours-b10000-comp": 14206,
    "ciura-128": 13974, "ciura-1000": 14003, "ciura-large": 13745, "tokuda": 13779,
    "pratt-25": 12604, "pratt-25-chain": 12515, "pratt-23": 12765, "pratt-34": 12686,
    "pratt-34-chain": 12792,
})
_fill("exchange_ops", 2000, {
    "ours-a128-comp": 33980, "ours-a1000-comp": 32125, "ours-b10000-comp": 32188,
    "ciura-128": 31846, "ciura-1000": 32029, "ciura-large": 31348, "tokuda": 31195,
    "pratt-25": 28550, "pratt-25-chain": 28371, "pratt-23": 29013, "pratt-34": 28693,
    "pratt-34-chain": 28915,
})
_fill("exchange_ops", 5000, {
    "ours-a128-comp": 101181, "ours-a1000-comp": 94750, "ours-b10000-comp": 93987,
    "ciura-128": 92629, "ciura-1000": 93556, "ciura-large": 91369, "tokuda": 91161,
    "pratt-25": 82724, "pratt-25-chain": 82288, "pratt-23": 85061, "pratt-34": 83336,
    "pratt-34-chain": 83847,
})
_fill("exchange_ops", 10000, {
    "ours-a128-comp": 227742, "ours-a1000-comp": 212206, "ours-b10000-comp": 209292,
    "ciura-128": 204833, "ciura-1000": 208499, "ciura-large": 203390, "tokuda": 201326,
    "pratt-25": 182691, "pratt-25-chain": 181704, "pratt-23": 189831, "pratt-34": 183749,
    "pratt-34-chain": 184761,
})

# reported wall times at N = 1000, milliseconds; used only for ordering checks
REFERENCE_TIME_MS: dict[str, float] = {
    "ours-a128-comp": 3.15, "ours-a1000-comp": 3.02, "ours-a1000-time": 3.01,
    "ours-b10000-comp": 3.04, "ciura-128": 3.07, "ciura-1000": 3.01,
    "ciura-large": 3.04, "tokuda": 3.06, "pratt-25": 5.00, "pratt-23": 6.35,
    "pratt-34": 4.17,
}

# reported mean inversion counts surviving the presort (all gaps above 1):
# (bases, n) -> mean count at the Frobenius offset (3 for 2&5, 5 for 3&4)
REFERENCE_REMAINING_INVERSIONS: dict[tuple[str, int], float] = {
    ("pratt-34", 250): 6.9, ("pratt-34", 500): 14.0, ("pratt-34", 1000): 28.1,
    ("pratt-34", 2000): 56.4, ("pratt-34", 4000): 113.1,
    ("pratt-25", 250): 13.4, ("pratt-25", 500): 27.1, ("pratt-25", 1000): 54.6,
    ("pratt-25", 2000): 109.4, ("pratt-25", 4000): 218.9,
}

BASELINE_SEQUENCES = (
    "ours-a128-comp", "ours-a1000-comp", "ours-a1000-time", "ours-b10000-comp",
    "ciura-128", "ciura-1000", "ciura-large", "tokuda",
    "pratt-25", "pratt-23", "pratt-34",
)

TABLE_SEQUENCES = BASELINE_SEQUENCES + ("pratt-25-chain", "pratt-34-chain")

TABLE_SIZES = {
    "small": (20, 128, 200),
    "medium": (1000, 2000, 5000),
    "large": (10000,),
    "time": (1000,),
    "inversions": (250, 500, 1000, 2000, 4000),
}
