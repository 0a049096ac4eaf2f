from fractions import Fraction

import pytest

from crtorsion.seifert import HolonomyBlock, HolonomyData, SeifertData, random_data, trivial_data


def lens21():
    # x = 1/2 on a genus-0 base, no exceptional fibers
    return HolonomyData(SeifertData(0, 2), (HolonomyBlock(Fraction(1, 2), 1),))


def poincare():
    return trivial_data(0, -1, ((2, 1), (3, 1), (5, 1)))


def third_torus():
    return HolonomyData(SeifertData(1, 3), (HolonomyBlock(Fraction(1, 3), 1),))


def twisted():
    sd = SeifertData(1, 0, ((3, 1), (4, 3)))
    return HolonomyData(
        sd,
        (
            HolonomyBlock(Fraction(1, 2), 1, ((Fraction(1, 6),), (Fraction(3, 8),))),
            HolonomyBlock(Fraction(1, 3), 2, ((Fraction(1, 9), Fraction(4, 9)), (Fraction(1, 12), Fraction(1, 3)))),
        ),
    )


NAMED = {
    "trivial": lambda: trivial_data(0, 1),
    "lens21": lens21,
    "poincare": poincare,
    "third": third_torus,
    "twisted": twisted,
}

RANDOM_SEEDS = (101, 103, 105, 110, 112, 132, 154)


def all_families():
    fams = {name: make() for name, make in NAMED.items()}
    for seed in RANDOM_SEEDS:
        fams[f"random{seed}"] = random_data(seed)
    return fams


@pytest.fixture(params=sorted(all_families()))
def family(request):
    return request.param, all_families()[request.param]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
