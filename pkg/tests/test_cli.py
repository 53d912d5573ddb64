import sys

import pytest

import liesys


@pytest.fixture
def cli(monkeypatch, tmp_path, capsys):
    monkeypatch.delenv('LIESYS_SEED', raising=False)

    def run(*args):
        monkeypatch.setattr(sys, 'argv', ['liesys', '--config-dir', str(tmp_path / 'config'), *args])

        with pytest.raises(SystemExit) as info:
            liesys.main()

        out, err = capsys.readouterr()
        return info.value.code, out, err

    return run


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_bracket_of_finitary_operators(cli, tmp_path):
    a = _write(tmp_path, 'a.txt', 'entry 1 2 : 1\n')
    b = _write(tmp_path, 'b.txt', 'entry 2 1 : 1\n')

    assert cli('bracket', a, b) == (0, 'entry 1 1 : 1\nentry 2 2 : -1\n', '')


def test_mixed_operands_are_promoted(cli, tmp_path):
    a = _write(tmp_path, 'a.txt', 'mackey\ndiag 1 : prefix ; tail 1\n')
    b = _write(tmp_path, 'b.txt', 'mackey\ndiag -1 : prefix ; tail 1\n')
    e = _write(tmp_path, 'e.txt', 'entry 1 1 : 1\n')

    code, out, _ = cli('mul', b, a)

    assert code == 0
    assert out == 'mackey\ndiag 0 : prefix 0 ; tail 1\n'

    code, out, _ = cli('mul', a, e)

    assert (code, out) == (0, 'mackey\n')


def test_trace(cli, tmp_path):
    a = _write(tmp_path, 'a.txt', 'entry 1 1 : 1/2\nentry 3 3 : 2\n')
    identity = _write(tmp_path, 'id.txt', 'mackey\ndiag 0 : prefix ; tail 1\n')

    assert cli('trace', a)[:2] == (0, '5/2\n')
    assert cli('trace', identity)[0] == 2


def test_dualize(cli, tmp_path):
    degenerate = _write(tmp_path, 'degenerate.txt', 'pairing mackey\nentry 2 2 : 1\n')

    assert cli('dualize', '--spec', degenerate, '--n', '1')[0] == 1

    spec = _write(tmp_path, 'spec.txt', 'pairing mackey\nmackey\ndiag -1 : prefix 1 ; tail 0\ndiag 0 : prefix 0 0 ; tail 1\ndiag 1 : prefix 1 ; tail 0\n')

    code, out, _ = cli('dualize', '--spec', spec, '--n', '2')

    assert code == 0
    assert out == 'u 1 : 1:1\nu 2 : 1:-1 2:1\nw 1 : 1:1 2:1\nw 2 : 1:1\n'


def test_dualize_rejects_small_bound(cli, tmp_path):
    spec = _write(tmp_path, 'spec.txt', 'pairing standard\n')

    assert cli('dualize', '--spec', spec, '--n', '3', '--search-bound', '2')[0] == 2


def test_classify(cli, tmp_path):
    aut = _write(tmp_path, 'aut.txt', 'aut\neps 1\ng:\nmackey\ndiag 0 : prefix ; tail 1\nginv:\nmackey\ndiag 0 : prefix ; tail 1\n')

    code, out, _ = cli('classify', '--aut', aut)

    assert code == 0
    assert out.startswith('type V*\nwindow 6\n1 0 0 0 0 0\n')

    assert cli('classify', '--aut', aut, '--max-window', '5')[0] == 2


def test_classify_inconclusive_exits_1(cli, tmp_path):
    swap = 'mackey\ndiag -19 : prefix 1 ; tail 0\ndiag 0 : prefix 0 ' + '1 ' * 18 + '0 ; tail 1\ndiag 19 : prefix 1 ; tail 0\n'
    aut = _write(tmp_path, 'aut.txt', f'aut\neps 0\ng:\n{swap}ginv:\n{swap}')

    code, _, err = cli('classify', '--aut', aut, '--max-window', '10')

    assert code == 1
    assert 'inconclusive' in err


def test_approx(cli, tmp_path):
    op = _write(tmp_path, 'op.txt', 'mackey\ndiag 0 : prefix ; tail 1\n')
    vectors = _write(tmp_path, 'vectors.txt', 'vector 1:1 2:-1\nvector 3:1\n')

    code, out, _ = cli('approx', '--op', op, '--vectors', vectors)

    assert code == 0
    assert out == 'entry 1 1 : 1\nentry 2 2 : 1\nentry 3 3 : 1\nentry 4 4 : -3\n'


def test_parse_error_exits_2(cli, tmp_path):
    a = _write(tmp_path, 'a.txt', 'entry 1 x : 1\n')

    code, out, err = cli('trace', a)

    assert code == 2
    assert out == ''
    assert 'line 1, column 9' in err


def test_missing_file_exits_2(cli, tmp_path):
    assert cli('trace', str(tmp_path / 'missing.txt'))[0] == 2


def test_non_canonical_input_is_logged(cli, tmp_path):
    a = _write(tmp_path, 'a.txt', 'entry 1 1 : 2/4')

    code, out, err = cli('trace', a)

    assert (code, out) == (0, '1/2\n')
    assert 'not in canonical form' in err


def test_check(cli):
    code, out, _ = cli('check', '--suite', 'core', '--seed', '5', '--window', '4', '--cases', '2')

    assert code == 0
    assert out.startswith('# suite core seed 5 window 4 cases 2\n1..4\n')


def test_seed_from_environment(cli, monkeypatch):
    monkeypatch.setenv('LIESYS_SEED', '99')

    code, out, err = cli('check', '--suite', 'core', '--seed', '5', '--cases', '1')

    assert code == 0
    assert out.startswith('# suite core seed 99 ')
    assert 'INFO - Seed 99 taken from LIESYS_SEED' in err


def test_log_level_filters_info(cli, monkeypatch):
    monkeypatch.setenv('LIESYS_SEED', '99')

    code, _, err = cli('--log-level', 'WARNING', 'check', '--suite', 'core', '--cases', '1')

    assert code == 0
    assert 'taken from LIESYS_SEED' not in err


@pytest.mark.parametrize('args', [
    ('check', '--suite', 'nope'),
    ('check', '--suite', 'core', '--seed', '-1'),
    ('check', '--suite', 'core', '--window', '0'),
])
def test_check_usage_errors(cli, args):
    assert cli(*args)[0] == 2


def test_config_file(cli, tmp_path):
    config = tmp_path / 'config'
    config.mkdir()
    (config / 'config.conf').write_text('[check]\nseed = 11\ncases = 1\n')

    code, out, _ = cli('check', '--suite', 'core')

    assert code == 0
    assert out.startswith('# suite core seed 11 window 10 cases 1\n')


def test_bad_config_exits_2(cli, tmp_path):
    config = tmp_path / 'config'
    config.mkdir()
    (config / 'config.conf').write_text('[check]\nseed = many\n')

    code, _, err = cli('check', '--suite', 'core')

    assert code == 2
    assert 'Config error' in err


def test_missing_subcommand_is_a_usage_error(cli):
    assert cli()[0] == 2
