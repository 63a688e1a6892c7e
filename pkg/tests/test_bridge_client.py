import numpy as np
import pytest

from sinebench.bridge import BridgeClient, ForecastRejected, ProtocolError

from conftest import (
    ECHO_ADAPTER,
    INSTANT_EXIT_ADAPTER,
    NAIVE_ADAPTER,
    REJECTING_ADAPTER,
    SLOW_ADAPTER,
    WRONG_ID_ADAPTER,
)


class TestHandshake:
    def test_hello_populates_info(self, make_adapter):
        argv, _ = make_adapter(NAIVE_ADAPTER)
        with BridgeClient(argv) as client:
            assert client.info.name == "pynaive"
            assert client.info.version == "1.0"

    def test_immediate_exit_raises(self, make_adapter):
        argv, _ = make_adapter(INSTANT_EXIT_ADAPTER)
        with pytest.raises(ProtocolError, match="closed its output"):
            BridgeClient(argv)

    def test_missing_program_raises(self):
        with pytest.raises(ProtocolError, match="cannot start"):
            BridgeClient(["/nonexistent/adapter-binary"])


class TestForecast:
    def test_naive_round_trip(self, make_adapter):
        argv, _ = make_adapter(NAIVE_ADAPTER)
        with BridgeClient(argv) as client:
            values = client.forecast("req-1", [1.0, 2.0, 3.5], 4, 0.1)
        assert values == [3.5, 3.5, 3.5, 3.5]

    def test_serial_requests_keep_working(self, make_adapter):
        argv, _ = make_adapter(NAIVE_ADAPTER)
        with BridgeClient(argv) as client:
            for i in range(50):
                out = client.forecast(f"r{i}", [float(i)], 2, 0.5)
                assert out == [float(i), float(i)]

    def test_floats_survive_json_exactly(self, make_adapter):
        # repr-based JSON floats are shortest round-trip representations,
        # so echoing the context back must be bit-exact
        argv, _ = make_adapter(ECHO_ADAPTER)
        rng = np.random.default_rng(0)
        context = list(rng.standard_normal(64)) + [0.1, 1 / 3, 1e-17, -1e300, 2**-1074]
        with BridgeClient(argv) as client:
            out = client.forecast("echo", context, 1, 0.25)
        assert len(out) == len(context)
        assert all(a == b for a, b in zip(out, context))

    def test_error_response_raises_rejection(self, make_adapter):
        argv, _ = make_adapter(REJECTING_ADAPTER)
        with BridgeClient(argv) as client:
            with pytest.raises(ForecastRejected) as exc:
                client.forecast("req", [1.0], 3, 0.1)
            assert exc.value.reason == "cannot forecast"
            # a rejection is per-request; the session stays usable
            with pytest.raises(ForecastRejected):
                client.forecast("req2", [1.0], 3, 0.1)

    def test_id_mismatch_is_protocol_error(self, make_adapter):
        argv, _ = make_adapter(WRONG_ID_ADAPTER)
        with BridgeClient(argv) as client:
            with pytest.raises(ProtocolError, match="someone-else"):
                client.forecast("mine", [1.0], 2, 0.1)

    def test_timeout(self, make_adapter):
        argv, _ = make_adapter(SLOW_ADAPTER)
        with BridgeClient(argv, timeout=0.5) as client:
            with pytest.raises(ProtocolError, match="no response within"):
                client.forecast("slow", [1.0], 2, 0.1)

    def test_shutdown_reaps_process(self, make_adapter):
        argv, _ = make_adapter(NAIVE_ADAPTER)
        client = BridgeClient(argv)
        client.forecast("a", [1.0], 1, 0.1)
        client.shutdown()
        assert client._proc.poll() is not None
        # idempotent
        client.shutdown()
