import pytest

from jjal import exceptions
from jjal import utils


class TestUnits:

    def test_dbm_to_watt(self):
        assert utils.dbm_to_watt(30.0) == pytest.approx(1.0)
        assert utils.dbm_to_watt(-118.0) == pytest.approx(1.585e-15, rel=1e-3)

    def test_db_round_trip(self):
        assert utils.db_to_power(20.0) == pytest.approx(100.0)
        assert utils.power_to_db(utils.db_to_power(23.2)) == pytest.approx(23.2)

    def test_file_sha256(self, tmp_path):
        path = tmp_path / 'empty.bin'
        path.write_bytes(b'')
        assert utils.file_sha256(str(path)) == 'e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855'


class TestWorkerCount:

    def test_requested(self, monkeypatch):
        monkeypatch.setenv('JJAL_THREADS', '3')
        assert utils.worker_count(2) == 2

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('JJAL_THREADS', '3')
        assert utils.worker_count() == 3

    def test_default(self, monkeypatch):
        monkeypatch.delenv('JJAL_THREADS', raising=False)
        assert utils.worker_count() >= 1

    @pytest.mark.parametrize('value', ['0', 'many'])
    def test_invalid_environment(self, monkeypatch, value):
        monkeypatch.setenv('JJAL_THREADS', value)
        with pytest.raises(exceptions.ConfigError):
            utils.worker_count()

    def test_invalid_request(self):
        with pytest.raises(exceptions.ConfigError):
            utils.worker_count(0)
