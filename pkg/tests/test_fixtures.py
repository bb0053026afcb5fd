from windrisk.fixtures import data_path, write_all


def test_bundled_fixtures_are_reproducible(tmp_path):
    for path in write_all(tmp_path):
        assert path.read_bytes() == data_path(path.name).read_bytes(), path.name
