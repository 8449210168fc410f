"""Build a step-transition model and ask it what usually comes next.

With the three sample mail traces the counts are small enough to
verify in your head: two of three demonstrations start by moving to
the front door, so the model proposes `move_to` with probability 2/3.
"""
import json

from tasktraces import build_markov, make_step, model_to_json, suggest_next

from _sample_data import mail_traces


def main():
    model = build_markov(mail_traces())

    print("== empty timeline: how do people start? ==")
    result = suggest_next(model, [], k=3)
    for s in result.suggestions:
        print(f"  {s.payload.kind} {dict(s.payload.args)}  p={s.score:.3f}")

    print("\n== after grabbing the mail ==")
    result = suggest_next(model, [make_step("grab", "mail")], k=3)
    for s in result.suggestions:
        print(f"  {s.payload.kind} {dict(s.payload.args)}  p={s.score:.3f}")
    print(f"  terminal probability: {result.terminal_probability:.3f}")

    doc = json.loads(model_to_json(model))
    print("\nexported model:", len(doc["states"]), "states,",
          doc["trace_count"], "traces")


if __name__ == "__main__":
    main()
