import pytest

from main import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def test_help(capsys):
    assert main(['help']) == EXIT_OK
    assert 'Usage: cyclekit' in capsys.readouterr().out
    assert main([]) == EXIT_OK


def test_unknown_command(capsys):
    assert main(['paint']) == EXIT_USAGE


def test_unknown_suite_is_a_usage_error():
    assert main(['verify', 'bogus']) == EXIT_USAGE
    assert main(['verify']) == EXIT_USAGE


def test_verify_prints_verdict_lines(capsys):
    assert main(['verify', 'ghosts', '--samples', '10', '--seed', '5']) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines and all(line.endswith('PASS') for line in lines)


def test_impossible_tolerance_fails(capsys):
    assert main(['verify', 'ghosts', '--samples', '10', '--tol', '-1']) == EXIT_FAIL


@pytest.mark.parametrize("args, expected", [
    (['measure', 'distance', '0,0', '3,4'], 'distance_sq 25'),
    (['measure', 'distance', '0,0', '3,4', '--sigma', '0'], 'distance_sq 9'),
    (['measure', 'distance', '-1,0', '2,4', '--sigma', 'h'], 'distance_sq -7'),
    (['measure', 'centre', '0,0', '3,4'], 'length 5'),
    (['measure', 'perpendicular', '0,0', '1,0', '0,1'], 'perpendicular True'),
])
def test_measure(capsys, args, expected):
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out.strip() == expected


def test_measure_parabolic_extremal_distance(capsys):
    assert main(['measure', 'extremal', '0,0', '1,0', '--sigma', '0']) == EXIT_OK
    assert capsys.readouterr().out.strip() == 'extremal_distance_sq 1'


def test_measure_uses_configured_perpendicular_tolerance(capsys, tmp_path):
    loose = tmp_path / 'loose.yaml'
    loose.write_text("numerics:\n  perpendicular_tol: 10.0\n", encoding='utf-8')
    args = ['measure', 'perpendicular', '0,0', '1,0', '1,0']
    assert main(args) == EXIT_OK
    assert capsys.readouterr().out.strip() == 'perpendicular False'
    assert main(args + ['--config', str(loose)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == 'perpendicular True'


def test_measure_rejects_bad_points():
    assert main(['measure', 'distance', '0', '3,4']) == EXIT_USAGE


def test_render_builtin_figure(tmp_path):
    target = tmp_path / 'orbits.svg'
    assert main(['render', 'k-orbits', '-o', str(target)]) == EXIT_OK
    assert '<polyline' in target.read_text(encoding='utf-8')


def test_render_missing_scene():
    assert main(['render', 'no/such/scene.yaml']) == EXIT_USAGE


def test_spectrum_of_example(capsys, tmp_path):
    plot = tmp_path / 'spectrum.svg'
    assert main(['spectrum', 'example', '--svg', str(plot)]) == EXIT_OK
    rows = [line.split() for line in capsys.readouterr().out.strip().splitlines()]
    assert sorted(int(row[2]) for row in rows) == [1, 2, 3, 4]
    assert plot.read_text(encoding='utf-8').count('<circle') == 4


def test_spectrum_of_file(capsys, tmp_path):
    matrix = tmp_path / 'block.txt'
    matrix.write_text("J(3, 0.5, 0) + J(1, -0.5, 0)\n", encoding='utf-8')
    assert main(['spectrum', str(matrix)]) == EXIT_OK
    rows = [line.split() for line in capsys.readouterr().out.strip().splitlines()]
    assert sorted(int(row[2]) for row in rows) == [1, 3]
    bad = tmp_path / 'bad.txt'
    bad.write_text("1 2\n3\n", encoding='utf-8')
    assert main(['spectrum', str(bad)]) == EXIT_USAGE


def test_analytic_cauchy(capsys):
    assert main(['analytic', 'cauchy', '0.3,0.2', '3']) == EXIT_OK
    cauchy, exact = capsys.readouterr().out.strip().splitlines()
    assert [float(x) for x in cauchy.split()[1:]] == pytest.approx([float(x) for x in exact.split()[1:]], abs=1e-10)


def test_analytic_needs_a_subcommand():
    assert main(['analytic']) == EXIT_USAGE
    assert main(['analytic', 'cauchy']) == EXIT_USAGE
