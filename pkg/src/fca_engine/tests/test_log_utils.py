import asyncio
import json

from fca_engine.utils import log_utils


def test_runtime_table_records_stay_whole_across_threads(tmp_path, monkeypatch):
    table = tmp_path / "runtime.jsonl"
    monkeypatch.setattr(log_utils, "RUN_TIME_TABLE_LOG_JSON", str(table))

    def burst(worker: int):
        for i in range(25):
            log_utils.log_runtime(f"worker{worker}_{i}" * 20, 0.001)

    async def run_workers():
        await asyncio.gather(*(asyncio.to_thread(burst, w) for w in range(8)))

    asyncio.run(run_workers())

    records = [json.loads(line) for line in table.read_text().splitlines()]
    assert len(records) == 200
    assert {record["duration"] for record in records} == {"0.0010"}


def test_runtime_table_is_off_by_default(tmp_path, monkeypatch):
    monkeypatch.setattr(log_utils, "RUN_TIME_TABLE_LOG_JSON", "")
    monkeypatch.chdir(tmp_path)
    log_utils.log_runtime("concepts", 0.5)
    assert list(tmp_path.iterdir()) == []
