"""Curated curves and Galois images backing the bundled statistics tables.

The images were obtained by matching subgroup censuses and Frobenius
fingerprints (determinant, trace, torsion shapes) sampled from prime
scans of the listed curves, then validated against their known exact
statistics.  None of them is a certified Galois image, so every entry
carries HEURISTIC provenance and reports built from them keep the flag.

A catalog entry stores generators; the group itself is rebuilt with
subgroup_closure on demand and memoized.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .curves import ShortWeierstrass
from .families import edwards_family, suyama
from .gl2 import enumerate_group, prob_table, subgroup_closure

CERTIFIED = "certified"
HEURISTIC = "heuristic"


@dataclass(frozen=True)
class ImageEntry:
    """A curated subgroup of GL_2(Z/mZ) with its table level n."""

    name: str
    modulus: int
    generators: tuple  # empty means the full group
    level: int
    provenance: str
    note: str = ""


_IMAGES = {
    e.name: e
    for e in [
        # full images: exact by the group-order argument once the mod-pi
        # image is known to be everything (generic curves, level 1)
        ImageEntry("full-2", 2, (), 1, CERTIFIED, "all of GL2(Z/2)"),
        ImageEntry("full-3", 3, (), 1, CERTIFIED, "all of GL2(Z/3)"),
        ImageEntry("full-5", 5, (), 1, CERTIFIED, "all of GL2(Z/5)"),
        # CM-type normalizer images of the curve y^2 = x^3 - 11x + 14
        ImageEntry(
            "e2-3",
            3,
            ((1, 2, 1, 1), (1, 0, 0, 2)),
            1,
            HEURISTIC,
            "nonsplit torus normalizer, order 16",
        ),
        ImageEntry(
            "e2-5",
            5,
            ((2, 0, 0, 1), (1, 0, 0, 2), (0, 1, 1, 0)),
            1,
            HEURISTIC,
            "split torus normalizer, order 32",
        ),
        # y^2 = x^3 - 10875x + 526250
        ImageEntry(
            "e3-2",
            8,
            ((0, 1, 1, 0), (0, 1, 1, 2), (0, 1, 3, 0), (0, 1, 5, 1)),
            3,
            HEURISTIC,
            "index 2 in GL2(Z/8), full below; order 768",
        ),
        ImageEntry(
            "e3-3",
            3,
            ((1, 1, 0, 1), (2, 0, 0, 1), (1, 0, 0, 2)),
            1,
            HEURISTIC,
            "Borel subgroup, order 12 (rational 3-isogeny)",
        ),
        ImageEntry(
            "e3-5",
            5,
            ((1, 1, 0, 1), (2, 0, 0, 1), (1, 0, 0, 4)),
            1,
            HEURISTIC,
            "Borel with square lower character, order 40",
        ),
        # Suyama family: rational 3-torsion point
        ImageEntry(
            "suyama-3",
            3,
            ((1, 1, 0, 1), (1, 0, 0, 2)),
            1,
            HEURISTIC,
            "stabilizer of a 3-torsion vector, order 6",
        ),
        # Montgomery 2-adic images
        ImageEntry(
            "montgomery-4",
            4,
            ((1, 0, 0, 3), (1, 1, 0, 1), (3, 0, 0, 1)),
            2,
            HEURISTIC,
            "generic Montgomery mod-4 image, order 16",
        ),
        ImageEntry(
            "suyama11-4",
            4,
            ((1, 1, 0, 1), (3, 0, 0, 1)),
            2,
            HEURISTIC,
            "a = -c^2 family, order 8",
        ),
        ImageEntry(
            "suyama94-8",
            8,
            ((1, 0, 0, 5), (1, 0, 4, 3), (1, 1, 0, 1), (3, 0, 0, 1)),
            3,
            HEURISTIC,
            "a - d = c^2 family, order 128",
        ),
        # twisted Edwards d = -e^4 families (torsion Z/2 x Z/4)
        ImageEntry(
            "ed24-generic-8",
            8,
            ((1, 0, 0, 5), (1, 0, 4, 1), (1, 4, 0, 1), (3, 0, 0, 1), (5, 0, 0, 1)),
            3,
            HEURISTIC,
            "full preimage of the order-2 mod-4 image; order 32",
        ),
        ImageEntry(
            "ed24-gminv-8",
            8,
            ((1, 0, 4, 1), (1, 4, 0, 1), (3, 0, 0, 1), (5, 0, 0, 1)),
            3,
            HEURISTIC,
            "e = (g - 1/g)/2 subfamily, order 16",
        ),
        ImageEntry(
            "ed24-g2-8",
            8,
            ((1, 0, 4, 5), (1, 4, 0, 1), (3, 0, 0, 1), (5, 0, 0, 1)),
            3,
            HEURISTIC,
            "e = g^2 subfamily, order 16",
        ),
        ImageEntry(
            "ed24-g2half-8",
            8,
            ((1, 0, 4, 5), (1, 4, 0, 1), (3, 0, 0, 5), (5, 0, 0, 1)),
            3,
            HEURISTIC,
            "e = g^2/2 subfamily, order 16",
        ),
        ImageEntry(
            "ed24-rat-8",
            8,
            ((1, 0, 4, 5), (1, 4, 0, 1), (3, 0, 0, 1), (5, 0, 0, 1)),
            3,
            HEURISTIC,
            "e = (2g^2+2g+1)/(2g+1) subfamily, order 16",
        ),
    ]
}


def image_names():
    return sorted(_IMAGES)


def image_entry(name):
    if name not in _IMAGES:
        raise KeyError("unknown curated image %r" % name)
    return _IMAGES[name]


@lru_cache(maxsize=None)
def get_image(name):
    """The curated SubgroupImage for a catalog name."""
    entry = image_entry(name)
    if not entry.generators:
        return enumerate_group(entry.modulus)
    return subgroup_closure(entry.generators, entry.modulus)


@lru_cache(maxsize=None)
def get_table(name):
    """Probability table of a curated image at its curated level."""
    entry = image_entry(name)
    return prob_table(get_image(name))


# ---------------------------------------------------------------------------
# reference curves


@lru_cache(maxsize=None)
def reference_curve(key):
    """Curves the bundled tables talk about, by short key."""
    if key == "E1":
        return ShortWeierstrass(5, 7)
    if key == "E2":
        return ShortWeierstrass(-11, 14)
    if key == "E3":
        return ShortWeierstrass(-10875, 526250)
    if key == "sigma12":
        return suyama(12).curve
    if key == "sigma11":
        return suyama(11).curve
    if key == "sigma94":
        return suyama(Fraction(9, 4)).curve
    if key == "ed-11^4":
        return edwards_family("generic", 11)
    if key == "ed-(77/36)^4":
        return edwards_family("gminv", Fraction(9, 2))
    if key == "ed-9^4":
        return edwards_family("g2", 3)
    if key == "ed-(81/8)^4":
        return edwards_family("g2half", Fraction(9, 2))
    if key == "ed-(5/3)^4":
        return edwards_family("rat", Fraction(-1, 3))
    raise KeyError("unknown reference curve %r" % key)


# rows: (label, curve key, pi, shape or None, image name)
TABLE1_ROWS = (
    ("E1 [3]=(1,1)", "E1", 3, (1, 1), "full-3"),
    ("E1 [3]=(0,1)", "E1", 3, (0, 1), "full-3"),
    ("E2 [3]=(1,1)", "E2", 3, (1, 1), "e2-3"),
    ("E2 [3]=(0,1)", "E2", 3, (0, 1), "e2-3"),
    ("E1 [5]=(1,1)", "E1", 5, (1, 1), "full-5"),
    ("E1 [5]=(0,1)", "E1", 5, (0, 1), "full-5"),
    ("E2 [5]=(1,1)", "E2", 5, (1, 1), "e2-5"),
    ("E2 [5]=(0,1)", "E2", 5, (0, 1), "e2-5"),
)

# rows: (label, curve key, pi, image name)
TABLE2_CELLS = (
    ("E1 v2", "E1", 2, "full-2"),
    ("E1 v3", "E1", 3, "full-3"),
    ("E1 v5", "E1", 5, "full-5"),
    ("E3 v2", "E3", 2, "e3-2"),
    ("E3 v3", "E3", 3, "e3-3"),
    ("E3 v5", "E3", 5, "e3-5"),
)

# rows: (label, curve key, image name, condition a mod 4 or None)
TABLE3_ROWS = tuple(
    (label + suffix, key, img, cond)
    for (label, key, img) in (
        ("ed generic", "ed-11^4", "ed24-generic-8"),
        ("ed g^2", "ed-9^4", "ed24-g2-8"),
        ("ed rat", "ed-(5/3)^4", "ed24-rat-8"),
        ("ed g^2/2", "ed-(81/8)^4", "ed24-g2half-8"),
        ("ed gminv", "ed-(77/36)^4", "ed24-gminv-8"),
    )
    for (suffix, cond) in ((" v2", None), (" v2|p=3(4)", 3), (" v2|p=1(4)", 1))
)

# rows: (label, curve key, pi, image name)
TABLE4_ROWS = (
    ("sigma=12 v2", "sigma12", 2, "montgomery-4"),
    ("sigma=12 v3", "sigma12", 3, "suyama-3"),
    ("sigma=11 v2", "sigma11", 2, "suyama11-4"),
    ("sigma=11 v3", "sigma11", 3, "suyama-3"),
    ("sigma=9/4 v2", "sigma94", 2, "suyama94-8"),
    ("sigma=9/4 v3", "sigma94", 3, "suyama-3"),
    ("ed -11^4 v2", "ed-11^4", 2, "ed24-generic-8"),
    ("ed -11^4 v3", "ed-11^4", 3, "full-3"),
    ("ed -(77/36)^4 v2", "ed-(77/36)^4", 2, "ed24-gminv-8"),
    ("ed -(77/36)^4 v3", "ed-(77/36)^4", 3, "full-3"),
    ("ed -9^4 v2", "ed-9^4", 2, "ed24-g2-8"),
    ("ed -9^4 v3", "ed-9^4", 3, "full-3"),
    ("ed -(81/8)^4 v2", "ed-(81/8)^4", 2, "ed24-g2half-8"),
    ("ed -(81/8)^4 v3", "ed-(81/8)^4", 3, "full-3"),
    ("ed -(5/3)^4 v2", "ed-(5/3)^4", 2, "ed24-rat-8"),
    ("ed -(5/3)^4 v3", "ed-(5/3)^4", 3, "full-3"),
)
