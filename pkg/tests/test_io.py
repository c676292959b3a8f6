import hashlib
import json
import os

import numpy as np
import pytest

import jjal
from jjal import exceptions
from jjal.circuit.ArrayDesign import ArrayDesign, SAMPLES_DIRECTORY
from jjal.io import synth
from jjal.io.ResultDocument import ResultDocument, build_provenance
from jjal.io.config import load_design, parse_design
from jjal.io.tables import format_value, load_inputs, load_populations, load_table, write_table


def write(path, text):
    path.write_text(text, encoding='utf-8')
    return str(path)


class TestDesignFiles:

    def test_sample(self):
        design = load_design(os.path.join(SAMPLES_DIRECTORY, 'sample_i.toml'))

        assert design.n_squids == 1200
        assert design.critical_current / 1e-6 == pytest.approx(6.0)
        assert design.josephson_capacitance / 1e-15 == pytest.approx(1080.0)
        assert design.stray_inductance / 1e-12 == pytest.approx(12.6)
        assert design.asymmetry == pytest.approx(1.022)

    def test_optional_keys(self):
        design = parse_design({'n_squids': 4, 'ic_uA': 6.0, 'cj_fF': 50, 'c0_fF': 20, 'cc_fF': 2, 'c0p_fF': 20})
        assert design.stray_inductance == 0.0
        assert design.port_impedance == 50.0

    def test_unknown_key(self, tmp_path):
        path = write(tmp_path / 'design.toml', 'n_squids = 4\nic_uA = 6.0\ncj_fF = 50\nc0_fF = 20\ncc_fF = 2\n'
                                               'c0p_fF = 20\nlj_pH = 3\n')
        with pytest.raises(exceptions.ConfigError) as error:
            load_design(path)
        assert error.value.key == 'lj_pH'

    def test_missing_key(self):
        with pytest.raises(exceptions.ConfigError) as error:
            parse_design({'n_squids': 4, 'ic_uA': 6.0})
        assert error.value.key == 'cj_fF'

    def test_wrong_types(self):
        base = {'n_squids': 4, 'ic_uA': 6.0, 'cj_fF': 50, 'c0_fF': 20, 'cc_fF': 2, 'c0p_fF': 20}
        with pytest.raises(exceptions.ConfigError):
            parse_design(dict(base, n_squids=4.0))
        with pytest.raises(exceptions.ConfigError):
            parse_design(dict(base, cj_fF='50'))
        with pytest.raises(exceptions.ConfigError):
            parse_design(dict(base, c0_fF=True))

    def test_invalid_toml(self, tmp_path):
        with pytest.raises(exceptions.ConfigError):
            load_design(write(tmp_path / 'design.toml', 'n_squids = = 4\n'))

    def test_missing_file(self, tmp_path):
        with pytest.raises(exceptions.ConfigError):
            load_design(str(tmp_path / 'absent.toml'))

    def test_invalid_design(self):
        with pytest.raises(exceptions.InvalidDesign):
            parse_design({'n_squids': 5, 'ic_uA': 6.0, 'cj_fF': 50, 'c0_fF': 20, 'cc_fF': 2, 'c0p_fF': 20})


class TestTables:

    def test_read(self, tmp_path):
        table = load_table(write(tmp_path / 'trace.csv', 'freq_hz,re,im\n1e9,0.5,-0.5\n2e9,1,0\n'), 'trace')

        assert len(table) == 2
        np.testing.assert_array_equal(table['freq_hz'], [1e9, 2e9])
        trace = table.to_trace()
        np.testing.assert_array_equal(trace.values, [0.5 - 0.5j, 1.0])
        assert trace.metadata['source'] == 'trace.csv'
        assert table.sha256 == hashlib.sha256(b'freq_hz,re,im\n1e9,0.5,-0.5\n2e9,1,0\n').hexdigest()

    def test_header_mismatch(self, tmp_path):
        with pytest.raises(exceptions.SchemaMismatch) as error:
            load_table(write(tmp_path / 'trace.csv', 'freq,re,im\n1e9,0.5,-0.5\n'), 'trace')
        assert error.value.header == 'freq'

    def test_unreadable_value(self, tmp_path):
        with pytest.raises(exceptions.UnitError) as error:
            load_table(write(tmp_path / 'trace.csv', 'freq_hz,re,im\n1e9,0.5,-0.5\n2e9,abc,0\n'), 'trace')
        assert error.value.line == 3

    def test_negative_frequency(self, tmp_path):
        with pytest.raises(exceptions.UnitError) as error:
            load_table(write(tmp_path / 'gain.csv', 'freq_hz,gain_db\n-1e9,3\n'), 'gain')
        assert error.value.line == 2

    def test_non_finite(self, tmp_path):
        with pytest.raises(exceptions.UnitError):
            load_table(write(tmp_path / 'gain.csv', 'freq_hz,gain_db\n1e9,nan\n'), 'gain')

    def test_wrong_value_count(self, tmp_path):
        with pytest.raises(exceptions.UnitError):
            load_table(write(tmp_path / 'gain.csv', 'freq_hz,gain_db\n1e9,3,4\n'), 'gain')

    def test_empty(self, tmp_path):
        with pytest.raises(exceptions.EmptyFile):
            load_table(write(tmp_path / 'gain.csv', ''), 'gain')
        with pytest.raises(exceptions.EmptyFile):
            load_table(write(tmp_path / 'gain.csv', 'freq_hz,gain_db\n\n'), 'gain')

    def test_too_few_rows(self, tmp_path):
        with pytest.raises(exceptions.InsufficientData):
            load_table(write(tmp_path / 'gain.csv', 'freq_hz,gain_db\n1e9,3\n'), 'gain', min_rows=4)

    def test_load_inputs(self, tmp_path):
        first = write(tmp_path / 'on.csv', 'freq_hz,psd_dbm_hz\n1e9,-140\n')
        second = write(tmp_path / 'off.csv', 'freq_hz,psd_dbm_hz\n1e9,-150\n')

        tables = load_inputs([first, second], 'psd')
        assert [table['psd_dbm_hz'][0] for table in tables] == [-140.0, -150.0]
        assert len(load_inputs(first, 'psd')) == 1

    def test_write_is_exact(self, tmp_path):
        path = str(tmp_path / 'out.csv')
        write_table(path, ['freq_hz', 'gain_db'], [(1e9, 0.1), (2e9, 1 / 3)])

        expected = 'freq_hz,gain_db\n1000000000.0,0.1\n2000000000.0,0.3333333333333333\n'
        assert (tmp_path / 'out.csv').read_text(encoding='utf-8') == expected
        assert load_table(path, 'gain')['gain_db'][1] == 1 / 3

    def test_format_value(self):
        assert format_value(3) == '3'
        assert format_value(np.int64(7)) == '7'
        assert format_value(np.float64(0.1)) == '0.1'
        assert format_value('ok') == 'ok'


class TestPopulations:

    def test_plain_list(self, tmp_path):
        path = write(tmp_path / 'p.json', '[12, 1]')
        assert load_populations(path) == ([12.0, 1.0], None)

    def test_object_with_energies(self, tmp_path):
        path = write(tmp_path / 'p.json', json.dumps({'populations': [0.9, 0.09, 0.01],
                                                      'energies_ghz': [0.0, 4.5, 8.8]}))
        populations, energies = load_populations(path)
        assert populations == [0.9, 0.09, 0.01]
        assert energies == [0.0, 4.5, 8.8]

    def test_empty_file(self, tmp_path):
        with pytest.raises(exceptions.EmptyFile):
            load_populations(write(tmp_path / 'p.json', '  \n'))

    @pytest.mark.parametrize('text, key', [
        ('{"populations": [1, 2', 'populations'),
        ('{"energies_ghz": [0, 4.5]}', 'populations'),
        ('{"populations": [1, 2], "temperature": 0.05}', 'temperature'),
        ('{"populations": [1, 2], "energies_ghz": [0]}', 'energies_ghz'),
        ('"12,1"', 'populations'),
    ])
    def test_schema_errors(self, tmp_path, text, key):
        with pytest.raises(exceptions.SchemaMismatch) as error:
            load_populations(write(tmp_path / 'p.json', text))
        assert error.value.header == key

    def test_non_numeric_value(self, tmp_path):
        with pytest.raises(exceptions.UnitError):
            load_populations(write(tmp_path / 'p.json', '[12, "one"]'))


class TestResultDocument:

    def test_json_is_plain_and_sorted(self):
        document = ResultDocument({'verb': 'fit-gain'}, {'seed': 0},
                                  {'b': np.float64(1.5), 'a': np.arange(3), 'error': np.inf, 'ok': np.bool_(True)})
        text = document.to_json()
        data = json.loads(text)

        assert data['payload'] == {'a': [0, 1, 2], 'b': 1.5, 'error': 'inf', 'ok': True}
        assert text.index('"command"') < text.index('"payload"') < text.index('"provenance"')
        assert text.endswith('}\n')

    def test_write_and_read(self, tmp_path):
        path = str(tmp_path / 'result.json')
        ResultDocument({'verb': 'kerr'}, {'seed': 1}, {'value': 2.0}).write(path)
        document = ResultDocument.read(path)

        assert document.command == {'verb': 'kerr'}
        assert document.payload == {'value': 2.0}

    def test_not_a_document(self):
        with pytest.raises(exceptions.SchemaMismatch):
            ResultDocument.from_json('{"command": {}}')
        with pytest.raises(exceptions.SchemaMismatch):
            ResultDocument.from_json('not json')

    def test_provenance(self, tmp_path):
        path = write(tmp_path / 'input.csv', 'freq_hz,gain_db\n1e9,3\n')
        provenance = build_provenance([path], 5)

        assert provenance['tool_version'] == jjal.__version__
        assert provenance['seed'] == 5
        assert provenance['inputs'] == {'input.csv': hashlib.sha256(b'freq_hz,gain_db\n1e9,3\n').hexdigest()}


class TestSynth:

    def test_deterministic(self):
        first = synth.generate('gain', 3, noise_db=0.1)
        second = synth.generate('gain', 3, noise_db=0.1)
        third = synth.generate('gain', 4, noise_db=0.1)

        np.testing.assert_array_equal(first['gain']['gain_db'], second['gain']['gain_db'])
        assert not np.array_equal(first['gain']['gain_db'], third['gain']['gain_db'])

    def test_tables(self):
        assert set(synth.generate('telegraph', 0, samples=100)) == {'telegraph', 'telegraph_truth'}
        assert set(synth.generate('psd', 0)) == {'psd_on', 'psd_off'}
        assert set(synth.generate('dimer', 0)['dimer']) == {'freq_hz', 're', 'im'}

    def test_psd_bump(self):
        tables = synth.generate('psd', 0)
        bump = tables['psd_on']['psd_dbm_hz'] - tables['psd_off']['psd_dbm_hz']
        assert bump.max() == pytest.approx(14.2)

    def test_unknown_generator(self):
        with pytest.raises(exceptions.InvalidParameter):
            synth.generate('spectrum', 0)

    def test_unknown_option(self):
        with pytest.raises(exceptions.ConfigError) as error:
            synth.generate('gain', 0, gain=20.0)
        assert error.value.key == 'gain'

    def test_unknown_ramsey_mode(self):
        with pytest.raises(exceptions.InvalidParameter):
            synth.generate('ramsey', 0, mode='triple')
