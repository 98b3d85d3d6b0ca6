import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from zimsnet.errors import ParseError
from zimsnet.storage import RunManifest, read_manifest, write_json_atomic, write_manifest


def _manifest() -> RunManifest:
    return RunManifest(
        run_id="4f1c",
        command="fit",
        version="0.1.0",
        seed=7,
        prior={"rank": 2, "n_regimes": 2},
        chain={"iterations": 10, "burn_in": 5},
        dims={"I": 3, "J": 3, "K": 1, "T": 8, "Q": 2},
        started_at="2025-01-01T00:00:00Z",
        finished_at="2025-01-01T00:00:03Z",
        block_seconds={"latent": 1.5},
        hmc_acceptance=0.8,
        n_draws=5,
        files={"draws": "draws.jsonl"},
        gamma_legend=[[0, 0, 0]],
    )


class TestManifest(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_round_trip(self) -> None:
        path = write_manifest(_manifest(), self.dir / "manifest.json")
        self.assertEqual(read_manifest(path), _manifest())

    def test_unknown_keys_are_ignored(self) -> None:
        data = _manifest().to_dict()
        data["extra"] = 1
        self.assertEqual(RunManifest.from_dict(data), _manifest())

    def test_atomic_write_leaves_no_temp_files(self) -> None:
        write_json_atomic({"a": 1}, self.dir / "sub" / "x.json")
        self.assertEqual([p.name for p in (self.dir / "sub").iterdir()], ["x.json"])
        self.assertEqual(json.loads((self.dir / "sub" / "x.json").read_text()), {"a": 1})

    def test_failed_write_keeps_previous_file(self) -> None:
        target = self.dir / "x.json"
        write_json_atomic({"a": 1}, target)
        with mock.patch("zimsnet.storage.manifest.json.dump", side_effect=RuntimeError("disk")):
            with self.assertRaises(RuntimeError):
                write_json_atomic({"a": 2}, target)
        self.assertEqual(json.loads(target.read_text()), {"a": 1})
        self.assertEqual([p.name for p in self.dir.iterdir()], ["x.json"])

    def test_unreadable_manifest(self) -> None:
        path = self.dir / "manifest.json"
        path.write_text("{not json", encoding="utf-8")
        with self.assertRaises(ParseError):
            read_manifest(path)
        with self.assertRaises(ParseError):
            read_manifest(self.dir / "missing.json")


if __name__ == "__main__":
    unittest.main()
