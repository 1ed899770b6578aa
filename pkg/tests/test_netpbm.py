import numpy as np
import pytest

from ciprng import ParameterError
from ciprng.netpbm import read_pbm, read_pgm, write_pbm, write_pgm


def test_pgm_roundtrip(tmp_path, rng):
    pixels = rng.integers(0, 256, size=(7, 13), dtype=np.uint8)
    write_pgm(tmp_path / "a.pgm", pixels)
    assert np.array_equal(read_pgm(tmp_path / "a.pgm"), pixels)


def test_pgm_header(tmp_path):
    write_pgm(tmp_path / "a.pgm", np.zeros((2, 3)))
    assert (tmp_path / "a.pgm").read_bytes() == b"P5\n# ciprng 0.1.0\n3 2\n255\n" + bytes(6)


def test_pgm_comments_anywhere(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5 # a\n# b\n2 # w\n1\n255\n\x07\x08")
    assert read_pgm(path).tolist() == [[7, 8]]


def test_pgm_raster_may_start_with_whitespace_byte(tmp_path):
    path = tmp_path / "ws.pgm"
    path.write_bytes(b"P5\n2 1\n255\n\x0a\x20")
    assert read_pgm(path).tolist() == [[10, 32]]


def test_pgm_rejects_other_maxval(tmp_path):
    path = tmp_path / "m.pgm"
    path.write_bytes(b"P5\n1 1\n65535\n\x00\x00")
    with pytest.raises(ParameterError):
        read_pgm(path)


def test_pgm_truncated(tmp_path):
    path = tmp_path / "t.pgm"
    path.write_bytes(b"P5\n4 4\n255\n\x00")
    with pytest.raises(ParameterError):
        read_pgm(path)


@pytest.mark.parametrize("width", [1, 8, 9, 64])
def test_pbm_roundtrip(tmp_path, rng, width):
    bits = rng.integers(0, 2, size=(5, width), dtype=np.uint8)
    write_pbm(tmp_path / "a.pbm", bits)
    assert np.array_equal(read_pbm(tmp_path / "a.pbm"), bits)


def test_pbm_row_padding(tmp_path):
    write_pbm(tmp_path / "p.pbm", np.array([[1, 0, 1], [0, 1, 1]]))
    data = (tmp_path / "p.pbm").read_bytes()
    assert data.endswith(b"3 2\n\xa0\x60")


def test_plain_pbm(tmp_path):
    path = tmp_path / "p1.pbm"
    path.write_bytes(b"P1\n# plain\n3 2\n1 0 1\n0 1 1\n")
    assert read_pbm(path).tolist() == [[1, 0, 1], [0, 1, 1]]


def test_plain_pbm_digits_unseparated(tmp_path):
    path = tmp_path / "p1.pbm"
    path.write_bytes(b"P1 2 2 1001")
    assert read_pbm(path).tolist() == [[1, 0], [0, 1]]


def test_wrong_magic(tmp_path):
    path = tmp_path / "x.pbm"
    path.write_bytes(b"P2\n1 1\n255\n0\n")
    with pytest.raises(ParameterError):
        read_pbm(path)
    with pytest.raises(ParameterError):
        read_pgm(path)
