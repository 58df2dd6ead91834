import pytest

from nonface.config import settings
from nonface.main import main
from tests.conftest import read_features_csv



class TestExtract:
    def test_writes_csv(self, synthetic_tree, tmp_path, capsys):
        out = tmp_path / "features.csv"
        code = main(["extract", str(synthetic_tree), "--block-size", "16", "--method", "M2", "--out", str(out)])
        assert code == 0
        rows = read_features_csv(out)
        assert len(rows) == 20
        assert len(rows[0][2]) == 9
        assert "20 rows x 9 features" in capsys.readouterr().out

    def test_missing_root(self, tmp_path, capsys):
        code = main(["extract", str(tmp_path / "nowhere"), "--out", str(tmp_path / "f.csv")])
        assert code == 2
        assert "dataset root is not a directory" in capsys.readouterr().out

    def test_root_from_settings(self, synthetic_tree, tmp_path, monkeypatch):
        monkeypatch.setattr(settings, "orl_root", synthetic_tree)
        assert main(["extract", "--out", str(tmp_path / "f.csv")]) == 0

    def test_no_root_at_all(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(settings, "orl_root", None)
        assert main(["extract", "--out", str(tmp_path / "f.csv")]) == 2
        assert "NON_ORL_ROOT" in capsys.readouterr().out

    def test_bad_block_size(self, synthetic_tree, tmp_path):
        with pytest.raises(SystemExit) as exit_info:
            main(["extract", str(synthetic_tree), "--block-size", "12", "--out", str(tmp_path / "f.csv")])
        assert exit_info.value.code == 2

    def test_unknown_flag(self, synthetic_tree):
        with pytest.raises(SystemExit) as exit_info:
            main(["extract", str(synthetic_tree), "--colour", "blue"])
        assert exit_info.value.code == 2

    def test_unwritable_output(self, synthetic_tree, tmp_path):
        assert main(["extract", str(synthetic_tree), "--out", str(tmp_path)]) == 3


class TestTrainAndEval:
    def test_train_is_reproducible(self, synthetic_tree, tmp_path, capsys):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        base = ["train", str(synthetic_tree), "--hidden", "6", "--seed", "1", "--epochs", "10"]
        assert main(base + ["--model-out", str(first)]) == 0
        assert main(base + ["--model-out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert "test error:" in capsys.readouterr().out

    def test_eval_saved_model(self, synthetic_tree, tmp_path, capsys):
        model = tmp_path / "model.json"
        assert main(["train", str(synthetic_tree), "--hidden", "6", "--epochs", "10",
                     "--model-out", str(model)]) == 0
        capsys.readouterr()
        assert main(["eval", str(synthetic_tree), "--model", str(model)]) == 0
        output = capsys.readouterr().out
        assert "test error:" in output and "(10 images)" in output

    def test_zero_hidden_rejected(self, synthetic_tree, tmp_path):
        with pytest.raises(SystemExit) as exit_info:
            main(["train", str(synthetic_tree), "--hidden", "0", "--model-out", str(tmp_path / "m.json")])
        assert exit_info.value.code == 2

    def test_eval_missing_model(self, synthetic_tree, tmp_path):
        assert main(["eval", str(synthetic_tree), "--model", str(tmp_path / "absent.json")]) == 2



class TestReproduce:
    def run(self, tree, out, fmt="markdown"):
        return main(["reproduce", str(tree), "--runs", "1", "--epochs", "3", "--format", fmt, "--out", str(out)])

    def test_markdown_tables(self, synthetic_tree, tmp_path, capsys):
        out = tmp_path / "tables.md"
        assert self.run(synthetic_tree, out) == 0
        text = out.read_text(encoding="utf-8")
        assert text.count("### Method") == 5
        assert sum(1 for line in text.splitlines() if line.startswith("| M") and "Method" not in line) == 60
        assert "†" in text
        assert (tmp_path / "tables.manifest.json").exists()
        assert "Bold average:" in text
        output = capsys.readouterr().out
        assert "best:" in output and "M5: lowest average" in output

    def test_csv_reruns_identical(self, synthetic_tree, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert self.run(synthetic_tree, first, "csv") == 0
        assert self.run(synthetic_tree, second, "csv") == 0
        assert len(first.read_text().splitlines()) == 61
        assert first.read_bytes() == second.read_bytes()