import json

import pytest

from errors import FieldModeError, ParameterRangeError
from run_config import ENVIRONMENT, RunConfig, build_config, environment_config, load_config_file


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for variable, _, _ in ENVIRONMENT.values():
        monkeypatch.delenv(variable, raising=False)


def write_config(tmp_path, data):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


class TestSources:
    def test_defaults(self):
        config = build_config('hypersurface', {'d': 4})
        assert (config.field, config.seed, config.u_max, config.window, config.jobs) == ('rationals', 0, 6, 4, 1)
        assert config.d == 4

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('NRED_SEED', '7')
        monkeypatch.setenv('NRED_FIELD', 'fp:101')
        assert environment_config()['seed'] == 7
        assert build_config('accept').field == 'fp:101'

    def test_bad_environment_value(self, monkeypatch):
        monkeypatch.setenv('NRED_JOBS', 'many')
        with pytest.raises(ParameterRangeError):
            environment_config()

    def test_file_aliases(self, tmp_path):
        values = load_config_file(write_config(tmp_path, {'nmax': 3, 'json': 'out.json', 'field': 'fp:7'}))
        assert values == {'n_max': 3, 'json_path': 'out.json', 'field': 'fp:7'}

    def test_precedence(self, tmp_path, monkeypatch):
        monkeypatch.setenv('NRED_SEED', '5')
        path = write_config(tmp_path, {'seed': 6, 'field': 'fp:7', 'window': 5})
        config = build_config('hypersurface', {'d': 3, 'seed': 9, 'field': None}, path)
        assert config.seed == 9
        assert config.field == 'fp:7'
        assert config.window == 5

    def test_unknown_key(self, tmp_path):
        with pytest.raises(ParameterRangeError):
            load_config_file(write_config(tmp_path, {'colour': 'red'}))

    def test_not_an_object(self, tmp_path):
        with pytest.raises(ParameterRangeError):
            load_config_file(write_config(tmp_path, [1, 2]))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParameterRangeError):
            load_config_file(str(tmp_path / 'absent.json'))


class TestValidation:
    @pytest.mark.parametrize('values', [{'d': 2}, {'g': 1}, {'r': 0}, {'n_max': 0}, {'window': 0},
                                        {'jobs': 0}, {'degrees': []}, {'inject_fault': 'memory'}])
    def test_out_of_range(self, values):
        with pytest.raises(ParameterRangeError):
            RunConfig(**values).validate()

    def test_field_of_characteristic_two(self):
        with pytest.raises(FieldModeError):
            RunConfig(field='fp:2').validate()

    def test_all_jobs(self):
        assert RunConfig(jobs=-1).validate().jobs == -1

    def test_echo_drops_timing(self):
        echo = RunConfig(command='star', d=3, r=1, timing=True).echo()
        assert 'timing' not in echo
        assert echo['d'] == 3
