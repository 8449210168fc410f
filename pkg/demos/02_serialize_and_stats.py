"""Round-trip traces through the canonical JSON form and summarize them.

The serialization is byte-stable: parsing a canonical line and
re-serializing it reproduces the line exactly, which makes datasets
diff-friendly.
"""
import json

from tasktraces import Dataset, dataset_stats, parse_trace, serialize_trace

from _sample_data import mail_traces


def main():
    traces = mail_traces()

    line = serialize_trace(traces[0])
    print("canonical JSON line:")
    print(" ", line)
    assert parse_trace(line) == traces[0]
    assert serialize_trace(parse_trace(line)) == line
    print("round-trip is exact.")

    print("\ndataset statistics:")
    stats = dataset_stats(Dataset(traces=tuple(traces)))
    print(json.dumps(stats.to_dict(), indent=2))


if __name__ == "__main__":
    main()
