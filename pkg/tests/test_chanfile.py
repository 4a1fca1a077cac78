import numpy as np
import pytest
from hypothesis import given, strategies as st

from coherentinfo import chanfile, channels as ch, superop
from coherentinfo.errors import ChannelFileError

IDENTITY_TEXT = """\
dims 2 2
block 0 0
1+0i 0+0i
0+0i 0+0i

block 1 1
0+0i 0+0i
0+0i 1+0i
block 0 1
0+0i 1+0i
0+0i 0+0i
block 1 0
0+0i 0+0i
1+0i 0+0i
"""


def test_parse_identity_any_block_order():
    assert chanfile.parse_channel(IDENTITY_TEXT).allclose(superop.identity_channel(2))


@pytest.mark.parametrize("token, value", [("0.5+0i", 0.5), ("-1e-3-2.5i", -1e-3 - 2.5j), (".5+.25i", 0.5 + 0.25j)])
def test_parse_entry(token, value):
    assert chanfile.parse_entry(token, 1) == value


@pytest.mark.parametrize("token", ["0.5", "1+i", "1+2j", "nan+0i", "1 +2i"])
def test_parse_entry_rejects(token):
    with pytest.raises(ChannelFileError):
        chanfile.parse_entry(token, 7)


@given(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e300))
def test_entry_round_trip(z):
    assert chanfile.parse_entry(chanfile.format_entry(z), 1) == z


def test_channel_round_trip(rng):
    s = ch.duplication(ch.rotated_basis(0.7, 0.2))
    assert chanfile.parse_channel(chanfile.format_channel(s)).allclose(s, atol=0)


def test_basis_in_written_computationally(rng):
    u = ch.rotated_basis(0.3)
    s = superop.Superoperator(superop.identity_channel(2).blocks, basis_in=u)
    parsed = chanfile.parse_channel(chanfile.format_channel(s))
    assert parsed.basis_in is None
    assert parsed.allclose(s)


def test_density_round_trip():
    rho = np.array([[0.25, 0.1 - 0.2j], [0.1 + 0.2j, 0.75]])
    assert np.array_equal(chanfile.parse_density(chanfile.format_density(rho)), rho)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("dim 2 2\n", 1),
        ("dims 2 0\n", 1),
        ("dims 1 1\nblock 0 0\n", 3),
        ("dims 1 1\nblock 0 0\n1+0i 0+0i\n", 3),
        ("dims 1 1\nblock 1 0\n1+0i\n", 2),
        ("dims 1 1\nblock 0 0\n1+0i\nblock 0 0\n1+0i\n", 4),
        ("dims 2 1\nblock 0 0\n1+0i\n", 4),
        ("dims 1 1\nblock 0 0\n1.0\n", 3),
    ],
)
def test_channel_errors_carry_line(text, line):
    with pytest.raises(ChannelFileError) as info:
        chanfile.parse_channel(text)
    assert info.value.line == line


def test_truncated_real_channel_file():
    lines = chanfile.format_channel(ch.atom_field(1.0)).splitlines()
    with pytest.raises(ChannelFileError) as info:
        chanfile.parse_channel("\n".join(lines[:-1]))
    assert info.value.line == len(lines)


def test_density_errors():
    with pytest.raises(ChannelFileError):
        chanfile.parse_density("dim 2\n1+0i 0+0i\n")
    with pytest.raises(ChannelFileError) as info:
        chanfile.parse_density("dim 1\n1+0i\nextra\n")
    assert info.value.line == 3


def test_read_files(tmp_path):
    path = tmp_path / "id.chan"
    path.write_text(IDENTITY_TEXT)
    assert chanfile.read_channel(path).dim_in == 2
    with pytest.raises(OSError):
        chanfile.read_channel(tmp_path / "missing.chan")
