import json
import math
import pytest

from cli.commands import CliInstance, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE
from data_processing.loader import load_json_document, load_record_table
from data_processing.writer import frame_to_csv, records_to_frame
from utils.config import Settings

HALF_TURN = "-1,0,0,0,1,0,0,0,-1"


def run(*argv) -> int:
    return CliInstance(Settings()).run(list(argv))


def fields(text: str) -> dict:
    return dict(line.split('=', 1) for line in text.strip().splitlines())


class TestDist:
    def test_su2_case1(self, capsys):
        assert run('dist', 'su2', '--a-re', '0', '--a-im', '0', '--b-re', '1', '--b-im', '0') == EXIT_OK
        out = fields(capsys.readouterr().out)
        assert float(out['t']) == pytest.approx(math.pi, abs=1e-12)
        assert out['case'] == 'Case1_Azero'

    def test_su2_identity_has_non_unique_parameters(self, capsys):
        assert run('dist', 'su2', '--a-re', '1', '--a-im', '0', '--b-re', '0', '--b-im', '0') == EXIT_OK
        out = fields(capsys.readouterr().out)
        assert out['t'] == '0.0'
        assert out['beta'] == 'non-unique'

    def test_so3_json(self, capsys):
        assert run('dist', 'so3', '--matrix', '1,0,0,0,-1,0,0,0,-1', '--json') == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert document['group'] == 'so3' and document['command'] == 'dist'
        record = document['records'][0]
        assert record['t'] == pytest.approx(math.pi * math.sqrt(3.0), abs=1e-9)
        assert record['case'] == 'Case2_AbsAone'
        assert record['phi0'] is None

    def test_so3_half_turn(self, capsys):
        assert run('dist', 'so3', f'--matrix={HALF_TURN}') == EXIT_OK
        assert float(fields(capsys.readouterr().out)['t']) == pytest.approx(math.pi, abs=1e-12)

    def test_non_unit_element(self, capsys):
        assert run('dist', 'su2', '--a-re', '2', '--a-im', '0', '--b-re', '0', '--b-im', '0') == EXIT_USAGE
        assert "unit-norm violation" in capsys.readouterr().err

    def test_missing_components(self, capsys):
        assert run('dist', 'su2', '--a-re', '1') == EXIT_USAGE
        assert "--a-im" in capsys.readouterr().err

    def test_bad_matrix(self, capsys):
        assert run('dist', 'so3', '--matrix', '1,0,0') == EXIT_USAGE
        assert "9 comma-separated" in capsys.readouterr().err

    def test_unknown_group(self):
        assert run('dist', 'su3') == EXIT_USAGE


class TestGeodesic:
    def test_su2_rows(self, capsys):
        assert run('geodesic', '--phi0', '0', '--beta', '0', '--t-max', str(math.pi), '--steps', '4') == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == 't,A_re,A_im,B_re,B_im'
        assert len(lines) == 6
        assert [float(v) for v in lines[1].split(',')] == [0.0, 1.0, 0.0, 0.0, 0.0]
        last = [float(v) for v in lines[-1].split(',')]
        assert last[0] == pytest.approx(math.pi)
        assert last[3] == pytest.approx(1.0, abs=1e-15)

    def test_so3_rows(self, capsys):
        assert run('geodesic', '--group', 'so3', '--phi0', '1', '--beta', '0.5',
                   '--t-max', '3', '--steps', '100') == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].split(',') == ['t'] + [f'm{i}{j}' for i in range(1, 4) for j in range(1, 4)]
        assert len(lines) == 102

    def test_json_to_file(self, tmp_path, capsys):
        out = tmp_path / 'geodesic.json'
        assert run('geodesic', '--phi0', '0.5', '--beta', '-1', '--t-max', '2', '--steps', '10',
                   '--format', 'json', '--out', str(out)) == EXIT_OK
        assert capsys.readouterr().out == ''
        document = load_json_document(str(out))
        assert len(document['records']) == 11
        assert document['params']['steps'] == 10

    @pytest.mark.parametrize("steps, t_max", [('0', '1'), ('5', '-1')])
    def test_rejects_bad_arguments(self, steps, t_max, capsys):
        assert run('geodesic', '--phi0', '0', '--beta', '0', '--t-max', t_max, '--steps', steps) == EXIT_USAGE
        assert "must be positive" in capsys.readouterr().err


class TestSphere:
    def test_small_radius(self, tmp_path, capsys):
        out = tmp_path / 'sphere.csv'
        assert run('sphere', '--radius', '1.0', '--samples', '50', '--seed', '7', '--out', str(out)) == EXIT_OK
        captured = capsys.readouterr()
        table = load_record_table(str(out))
        assert len(table) > 0
        assert (table['r'] - 1.0).abs().max() <= 1e-6
        assert "kept" in captured.err

    def test_full_turn_radius(self, tmp_path):
        out = tmp_path / 'sphere.csv'
        assert run('sphere', '--radius', repr(2 * math.pi), '--samples', '20', '--seed', '1',
                   '--out', str(out)) == EXIT_OK
        table = load_record_table(str(out))
        assert len(table) == 20
        assert (table['A_re'] + 1.0).abs().max() <= 1e-12

    def test_is_reproducible(self, capsys):
        run('sphere', '--group', 'so3', '--radius', '2.0', '--samples', '30', '--seed', '3')
        first = capsys.readouterr().out
        run('sphere', '--group', 'so3', '--radius', '2.0', '--samples', '30', '--seed', '3')
        assert capsys.readouterr().out == first

    @pytest.mark.parametrize("radius", ['-1', '0', '7'])
    def test_rejects_radius(self, radius, capsys):
        assert run('sphere', '--radius', radius, '--samples', '5') == EXIT_USAGE
        assert "--radius" in capsys.readouterr().err

    def test_rejects_negative_seed(self, capsys):
        assert run('sphere', '--radius', '1', '--samples', '5', '--seed', '-3') == EXIT_USAGE


class TestCutLocus:
    @pytest.mark.parametrize("matrix, tag", [
        ('1,0,0,0,1,0,0,0,1', 'NotCut'),
        (HALF_TURN, 'Sym'),
        (f'1,0,0,0,0.5,{-math.sqrt(0.75)!r},0,{math.sqrt(0.75)!r},0.5', 'Loc'),
    ])
    def test_so3(self, matrix, tag, capsys):
        assert run('cutlocus', f'--matrix={matrix}') == EXIT_OK
        out = fields(capsys.readouterr().out)
        assert out['tag'] == tag
        assert 'involution_residual' in out

    def test_su2(self, capsys):
        assert run('cutlocus', '--su2', f'0,0.5,{math.sqrt(0.75)!r},0') == EXIT_OK
        assert fields(capsys.readouterr().out)['tag'] == 'Sym'

    def test_needs_exactly_one_target(self):
        assert run('cutlocus') == EXIT_USAGE
        assert run('cutlocus', '--su2', '1,0,0,0', '--matrix', '1,0,0,0,1,0,0,0,1') == EXIT_USAGE


class TestVerify:
    @pytest.mark.parametrize("suite", ['submetry', 'lemmas', 'br-counterexample', 'cutlocus', 'residuals'])
    def test_suites_pass(self, suite, capsys):
        assert run('verify', '--suite', suite, '--n', '50', '--seed', '1') == EXIT_OK
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "checks passed" in out

    def test_counterexample_prints_both_times(self, capsys):
        run('verify', '--suite', 'br-counterexample')
        out = capsys.readouterr().out
        assert "t_short=" in out and "t_long=" in out

    def test_unknown_preset(self, capsys):
        assert run('verify', '--suite', 'lemmas', '--preset', 'nope') == EXIT_USAGE
        assert "unknown oracle preset" in capsys.readouterr().err

    def test_rejects_non_positive_n(self):
        assert run('verify', '--n', '0') == EXIT_USAGE

    def test_exit_code_for_failed_check(self, monkeypatch, capsys):
        from cli import suites

        def failing(ctx):
            return [suites.CheckResult("always fails", 0, 1, 1.0)]

        monkeypatch.setitem(suites.SUITES, 'lemmas', failing)
        assert run('verify', '--suite', 'lemmas') == EXIT_CHECK_FAILED
        assert "0/1 checks passed" in capsys.readouterr().out


class TestCsvRoundTrip:
    def test_reload_is_byte_identical(self, tmp_path):
        path = tmp_path / 'geodesic.csv'
        run('geodesic', '--phi0', '0.3', '--beta', '1.7', '--t-max', '2.5', '--steps', '25', '--out', str(path))
        original = path.read_text(encoding='utf-8')
        table = load_record_table(str(path))
        records = table.to_dict('records')
        assert frame_to_csv(records_to_frame(records, list(table.columns))) == original


def test_help_exits_cleanly(capsys):
    assert run('--help') == EXIT_OK
    assert 'srdist' in capsys.readouterr().out
