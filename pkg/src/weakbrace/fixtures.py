"""Bundled tables and the named maps of the two worked examples."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .fileio import TableDocument, read_semilattice_file, read_table_file

EX1_NAMES = ("0", "e", "f", "a", "b")

# phi_k written as (image of 0, e, f, a, b), in the order of the listed enumeration of End(S,+).
PHI_LISTED = {
    1: "00000", 2: "eeeee", 3: "fffff",
    4: "00e0e", 5: "00e0a", 6: "0e0e0", 7: "0e0a0",
    8: "00f0f", 9: "00f0b", 10: "0f0f0", 11: "0f0b0",
}

# Labels as used by the subsemigroups, Gamma functions and products of the
# worked example: phi_8..phi_11 are the images of phi_4..phi_7 under the
# automorphism e<->f, a<->b. Same set of maps as PHI_LISTED, with 8<->10 and
# 9<->11 exchanged; only this labelling makes H1, H2, gamma1, gamma2 and
# (phi_4,a)(phi_8,b) = (phi_6,a) hold.
PHI = dict(PHI_LISTED)
PHI.update({8: "0f0f0", 9: "0f0b0", 10: "00f0f", 11: "00f0b"})

H1 = ((1, "0"), (7, "e"), (11, "f"), (7, "a"), (11, "b"))
H2 = ((1, "0"), (7, "e"), (11, "f"), (5, "a"), (9, "b"))

GAMMA1 = {"0": 1, "e": 7, "f": 11, "a": 7, "b": 11}
GAMMA2 = {"0": 1, "e": 7, "f": 11, "a": 5, "b": 9}

# lambda maps of (S,+,o2)
LAMBDA_BRACE2 = {"0": 1, "e": 7, "f": 11, "a": 5, "b": 9}


def phi_images(k: int, listed: bool = False) -> tuple[int, ...]:
    word = (PHI_LISTED if listed else PHI)[k]
    return tuple(EX1_NAMES.index(c) for c in word)


def data_path(name: str) -> Path:
    return Path(str(resources.files("weakbrace") / "data" / name))


def load(name: str) -> TableDocument:
    return read_table_file(data_path(name))


def load_semilattice(name: str):
    return read_semilattice_file(data_path(name))
