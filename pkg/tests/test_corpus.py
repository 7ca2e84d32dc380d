import pytest

from ofamatch.corpus import (
    HINF_BASE_WEIGHTS, apply_transform, make_corpus, repeat_to_size, synthetic_dna,
)


def test_exact_target_size(tmp_path):
    src = tmp_path / "src.txt"
    src.write_text("Hello World\n" * 3)
    out = make_corpus(src, tmp_path / "out.txt", 1000, "lowercase")
    data = out.read_bytes()
    assert len(data) == 1000
    assert data.startswith(b"hello world\nhello")


def test_no_transform_at_source_size_is_identity(tmp_path):
    src = tmp_path / "src.txt"
    src.write_bytes("abé\ncd\n".encode())
    out = make_corpus(src, tmp_path / "out.txt", src.stat().st_size)
    assert out.read_bytes() == src.read_bytes()


def test_strip_newlines():
    assert apply_transform("ac\ngt", "strip-newlines") == "acgt"
    assert apply_transform("ac\r\ngt\n", "strip-newlines") == "acgt"


def test_unknown_transform():
    with pytest.raises(ValueError):
        apply_transform("x", "upper")


def test_large_source_to_ten_megabytes(tmp_path):
    src = tmp_path / "src.txt"
    src.write_text(("abcdefghij" * 40 + "\n") * 1000)  # about 401 KB
    out = make_corpus(src, tmp_path / "out.txt", 10 * 1024 * 1024, "strip-newlines")
    assert out.stat().st_size == 10 * 1024 * 1024


def test_cut_inside_multibyte_character():
    data = repeat_to_size("é", 5)
    assert data == "éé".encode()


def test_empty_source_is_rejected():
    with pytest.raises(ValueError):
        repeat_to_size("", 10)


def test_synthetic_dna_is_deterministic_and_weighted():
    s = synthetic_dna(100_000, seed=3)
    assert s == synthetic_dna(100_000, seed=3)
    assert set(s) == set("ACGT")
    for base, w in HINF_BASE_WEIGHTS.items():
        assert abs(s.count(base) / len(s) - w) < 0.01
