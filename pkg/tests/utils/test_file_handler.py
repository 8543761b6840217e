# tests/utils/test_file_handler.py
import pytest

from lyndon_bwt.utils.file_handler import read_bytes, write_bytes

# --- Tests for read_bytes ---

def test_read_bytes_success(tmp_path):
    """Test reading an existing file, byte 0 included."""
    test_file = tmp_path / "read_test.bin"
    expected_content = b"annb\x00aa"
    test_file.write_bytes(expected_content)
    assert read_bytes(test_file) == expected_content


def test_read_bytes_not_found(tmp_path):
    """Test reading a non-existent file raises FileNotFoundError."""
    non_existent_file = tmp_path / "not_here.bin"
    with pytest.raises(FileNotFoundError, match=f"File not found: {non_existent_file}"):
        read_bytes(non_existent_file)


def test_read_bytes_handles_read_error(tmp_path, mocker):
    """Test that read errors are wrapped in RuntimeError."""
    test_file = tmp_path / "read_error.bin"
    test_file.touch()
    mock_read = mocker.patch("pathlib.Path.read_bytes", side_effect=OSError("Disk read error"))

    with pytest.raises(RuntimeError, match="Failed to read file"):
        read_bytes(test_file)
    mock_read.assert_called_once()


def test_read_bytes_limit_reads_only_the_prefix(tmp_path, mocker):
    """With a limit the file is opened and only its first bytes are read."""
    test_file = tmp_path / "banana.bp"
    test_file.write_bytes(b"LYNBP001" + bytes(1000))
    whole = mocker.patch("pathlib.Path.read_bytes")
    assert read_bytes(test_file, limit=8) == b"LYNBP001"
    assert read_bytes(tmp_path / "banana.bp", limit=4096) == b"LYNBP001" + bytes(1000)
    whole.assert_not_called()


def test_read_bytes_limit_not_found(tmp_path):
    with pytest.raises(FileNotFoundError, match="File not found"):
        read_bytes(tmp_path / "missing.bp", limit=8)

# --- Tests for write_bytes ---

def test_write_bytes_creates_parents(tmp_path):
    """Test writing to a new file creates it and its parents."""
    output_dir = tmp_path / "output"
    test_file = output_dir / "subdir" / "lam.bin"

    write_bytes(test_file, b"LYNARR01")

    assert test_file.read_bytes() == b"LYNARR01"
    assert (output_dir / "subdir").is_dir()


def test_write_bytes_overwrite(tmp_path):
    """Test overwriting an existing file."""
    test_file = tmp_path / "overwrite.bin"
    test_file.write_bytes(b"initial")
    write_bytes(test_file, b"new")
    assert test_file.read_bytes() == b"new"


def test_write_bytes_handles_write_error(tmp_path, mocker):
    """Test that write errors are wrapped in RuntimeError."""
    test_file = tmp_path / "write_error.bin"
    mock_write = mocker.patch("pathlib.Path.write_bytes", side_effect=OSError("Disk write error"))
    mocker.patch("pathlib.Path.mkdir")

    with pytest.raises(RuntimeError, match="Failed to write to file"):
        write_bytes(test_file, b"content")
    mock_write.assert_called_once()
