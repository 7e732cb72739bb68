from math import comb

import pytest

from ordhyp.construct import acnodal_coset, near_pencil, off_coset_probe, perturb
from ordhyp.enumeration import spectrum
from ordhyp.groupmodel import dplus1_predict, ordinary_predict
from ordhyp.projective import Configuration, GeneralPositionError, general_position


def test_near_pencil_shape():
    cfg = near_pencil(4, 10)
    assert cfg.n == 10 and cfg.dim == 4
    assert general_position(Configuration(4, near_pencil(4, 6).points)) == (True, None)
    with pytest.raises(ValueError):
        near_pencil(4, 5)


def test_acnodal_coset_meta():
    cfg, meta = acnodal_coset(4, 10, 3)
    assert meta.c == 7 and meta.modulus == 100 and cfg.verified
    assert len(set(cfg.points)) == 10
    with pytest.raises(ValueError):
        acnodal_coset(4, 10, 50)


@pytest.mark.parametrize("n,j", [(7, 0), (7, 4), (8, 1), (9, 2), (11, 0)])
def test_coset_spectrum_matches_group_model(n, j):
    cfg, meta = acnodal_coset(4, n, j)
    rep = spectrum(cfg)
    assert rep.ordinary == ordinary_predict(meta.coset_spec())
    assert rep.dplus1 == dplus1_predict(meta.coset_spec())
    if n % 5:
        assert rep.ordinary == comb(n - 1, 3)


def test_d5_coset_matches_group_model():
    cfg, meta = acnodal_coset(5, 8, 1)
    rep = spectrum(cfg)
    assert (rep.ordinary, rep.dplus1) == (ordinary_predict(meta.coset_spec()), dplus1_predict(meta.coset_spec()))


def test_off_coset_probe():
    cfg, meta = acnodal_coset(4, 10, 0)
    q = off_coset_probe(meta, 1)
    assert general_position(Configuration(4, cfg.points + (q,))) == (True, None)
    with pytest.raises(ValueError):
        off_coset_probe(meta, 5)


def test_perturb():
    cfg = near_pencil(4, 12)
    assert perturb(cfg) is cfg
    smaller = perturb(cfg, remove=[0])
    assert smaller.n == 11 and "remove[0]" in smaller.label
    with pytest.raises(GeneralPositionError) as info:
        perturb(cfg, add=[(2, 4, 6, 8, 0)])
    assert info.value.subset is not None
