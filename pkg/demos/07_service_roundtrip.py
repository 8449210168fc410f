"""Exercise the HTTP collection service end to end, in process.

Acknowledges the instructions (required before submitting), submits
the sample traces, rebuilds the per-category models, and asks for
suggestions — the same flow the web client drives over the network.
"""
import tempfile

from fastapi.testclient import TestClient

from tasktraces.dataset import trace_to_dict
from tasktraces.service import ServiceConfig, create_app

from _sample_data import mail_traces


def main():
    with tempfile.TemporaryDirectory() as data_dir:
        app = create_app(ServiceConfig(data_dir=data_dir, rebuild_every=1))
        client = TestClient(app)

        resp = client.post("/sessions/acknowledge", json={"worker_id": "w1"})
        session = resp.json()["session_id"]
        headers = {"X-Session-Id": session}
        print("acknowledged; session", session[:8], "...")

        for trace in mail_traces():
            resp = client.post(
                "/traces", json=trace_to_dict(trace), headers=headers
            )
            print(f"submitted {trace.id}: {resp.status_code}",
                  resp.json()["status"])

        resp = client.get("/stats")
        print("\nstats:", resp.json()["total_traces"], "traces on record")

        resp = client.post(
            "/categories/mail/suggest", json={"hint": []}, headers=headers
        )
        body = resp.json()
        print(f"\nsuggestions (model v{body['model_version']}):")
        for s in body["suggestions"]:
            print(f"  [{s['kind']}] score={s['score']:.3f}")


if __name__ == "__main__":
    main()
