"""Published table values, as literal rationals.

Factored entries were multiplied out once and pasted here so that the
regression fixtures never go through the code they are meant to check.
Keys are ``(family, k, M, n1, n2)``.
"""

BKK20 = {
    ("b", 1, 1, 2, 0): "1/80",
    ("b", 2, 2, 2, 0): "17/10644480",
    ("b", 3, 3, 2, 0): "11593/11951097584025600",
    ("b", 4, 4, 2, 0): "42552287/23229588160892484609638400000",
    ("b", 5, 5, 2, 0): "843571462477/109822029896166965879584869337949798400000000",
    ("b", 6, 6, 2, 0): "29077609846088147/549047475810445592188516601749581135603590045368320000000000000",
}

A21 = {
    ("a", 2, 1, 0, 0): "1/12",
    ("a", 2, 1, 1, 0): "1/45",
    ("a", 2, 1, 1, 1): "61/10080",
    ("a", 2, 1, 2, 0): "1/112",
    ("a", 2, 1, 2, 1): "1133/453600",
    ("a", 2, 1, 2, 2): "449/415800",
    ("a", 2, 1, 3, 0): "1/225",
    ("a", 2, 1, 3, 1): "529/415800",
    ("a", 2, 1, 3, 2): "3943/6879600",
    ("a", 2, 1, 3, 3): "48953/155232000",
}

B21 = {
    ("b", 2, 1, 0, 0): "1/12",
    ("b", 2, 1, 1, 0): "1/720",
    ("b", 2, 1, 1, 1): "1/6720",
    ("b", 2, 1, 2, 0): "1/4032",
    ("b", 2, 1, 2, 1): "19/3628800",
    ("b", 2, 1, 2, 2): "17/10644480",
    ("b", 2, 1, 3, 0): "1/57600",
    ("b", 2, 1, 3, 1): "19/10644480",
    ("b", 2, 1, 3, 2): "127/1761177600",
    ("b", 2, 1, 3, 3): "41/1419264000",
}

PRESETS = {"bkk20": BKK20, "a21": A21, "b21": B21}

# leading constants of zeta / Hardy Z moments known from the literature,
# as (family, k, M, n1, n2) -> (rational multiple, power of pi)
LITERATURE_CONSTANTS = {
    ("b", 2, 1, 2, 0): ("1/672", -2),
    ("b", 2, 1, 2, 1): ("19/604800", -2),
    ("b", 2, 2, 2, 0): ("17/1774080", -2),
}
