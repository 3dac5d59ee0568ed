"""Acceptance suite: one test per criterion, at the stated scale and
tolerance, printing one PASS/FAIL line each (run with -s to see them).

Every expected value is either a frozen vector or comes from the
independent oracles in oracles.py; nothing is compared against the
implementation's own output.
"""

import random
import socket
import threading
import time
from contextlib import contextmanager

import pytest

from ejafa import channel, golden, session
from ejafa.chacha20 import chacha20_block, chacha20_xor, quarter_round
from ejafa.blake2s import blake2s
from ejafa.cli import main as cli_main
from ejafa.errors import AuthenticationFailed, ReplayDetected
from ejafa.hkdf import hkdf, hkdf_expand, hkdf_extract
from ejafa.poly1305 import poly1305_tag
from ejafa.x25519 import BASEPOINT, clamp, generate_keypair, x25519

import oracles

RNG = random.Random(0xACCE97)


@contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        print(f"criterion {number:02d}: FAIL  {title}")
        raise
    print(f"criterion {number:02d}: PASS  {title}")


def test_criterion_01_x25519_paper_vector():
    with criterion(1, "x25519 key-exchange vectors reproduce byte-exactly"):
        start = time.perf_counter()
        alice = clamp(golden.X25519_ALICE_PRIV)
        bob = clamp(golden.X25519_BOB_PRIV)
        assert x25519(alice, BASEPOINT) == golden.X25519_ALICE_PUB
        assert x25519(bob, BASEPOINT) == golden.X25519_BOB_PUB
        assert x25519(alice, golden.X25519_BOB_PUB) == golden.X25519_SHARED
        elapsed = time.perf_counter() - start
        assert elapsed < 0.001, f"{elapsed * 1000:.2f} ms"


def test_criterion_02_dh_symmetry_1000():
    with criterion(2, "DH symmetry over 1000 random keypair pairs in <5 s"):
        start = time.perf_counter()
        pairs = [generate_keypair(RNG.randbytes(32)) for _ in range(1000)]
        for i in range(1000):
            (a, pub_a) = pairs[i]
            (b, pub_b) = pairs[(i + 1) % 1000]
            assert x25519(a, pub_b) == x25519(b, pub_a)
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"{elapsed:.2f} s"


def test_criterion_03_ladder_vs_oracle_200():
    with criterion(3, "ladder equals double-and-add oracle on 200 random inputs"):
        for _ in range(200):
            scalar = RNG.randbytes(32)
            point = RNG.randbytes(32)
            assert x25519(clamp(scalar), point) == \
                oracles.x25519_oracle(scalar, point)


def test_criterion_04_quarter_round_diffusion():
    with criterion(4, "quarter-round diffusion mean in [11.5, 13.5] over 1e5 flips"):
        start = time.perf_counter()
        trials = 100_000
        total = 0
        zero_state = (0,) * 16
        base_out = quarter_round(zero_state, 0, 4, 8, 12)
        for _ in range(trials):
            bit = RNG.randrange(128)
            state = [0] * 16
            state[(0, 4, 8, 12)[bit // 32]] = 1 << (bit % 32)
            out = quarter_round(state, 0, 4, 8, 12)
            total += sum((base_out[i] ^ out[i]).bit_count() for i in (0, 4, 8, 12))
        mean = total / trials
        elapsed = time.perf_counter() - start
        assert 11.5 <= mean <= 13.5, mean
        assert elapsed < 10.0, f"{elapsed:.2f} s"


def test_criterion_05_chacha20_vs_oracle_50():
    with criterion(5, "chacha20 block and stream match the reference oracle, 50 vectors"):
        for _ in range(50):
            key = RNG.randbytes(32)
            nonce = RNG.randbytes(12)
            counter = RNG.randrange(0, 2**32)
            assert chacha20_block(key, counter, nonce) == \
                oracles.chacha20_block_oracle(key, counter, nonce)
            data = RNG.randbytes(RNG.randrange(0, 500))
            start_counter = RNG.randrange(0, 1000)
            assert chacha20_xor(key, nonce, start_counter, data) == \
                oracles.chacha20_xor_oracle(key, nonce, start_counter, data)


def test_criterion_06_poly1305_vs_oracle_200():
    with criterion(6, "poly1305 matches the big-integer oracle, 200 messages"):
        for _ in range(200):
            key = RNG.randbytes(32)
            msg = RNG.randbytes(RNG.randrange(0, 301))
            assert poly1305_tag(key, msg) == oracles.poly1305_oracle(key, msg)
        for _ in range(20):
            s = RNG.randbytes(16)
            assert poly1305_tag(bytes(16) + s, RNG.randbytes(64)) == s
            assert poly1305_tag(RNG.randbytes(16) + s, b"") == s


def test_criterion_07_blake2s_vs_oracle_1000():
    with criterion(7, "blake2s matches the reference oracle on 1000 inputs"):
        assert blake2s(b"") == golden.BLAKE2S_EMPTY
        assert blake2s(b"abc") == golden.BLAKE2S_ABC
        boundary_sizes = [0, 1, 55, 63, 64, 65, 127, 128, 129, 191, 192, 193]
        for i in range(1000):
            size = boundary_sizes[i % len(boundary_sizes)] if i % 3 else RNG.randrange(0, 400)
            data = RNG.randbytes(size)
            key = RNG.randbytes(RNG.choice([0, 0, 0, 16, 32]))
            n = RNG.choice([1, 16, 20, 32])
            assert blake2s(data, key, n) == oracles.blake2s_oracle(data, key, n)


def test_criterion_08_hkdf_properties():
    with criterion(8, "hkdf prefix property, two-block vector, and composition"):
        prk = hkdf_extract(b"", golden.X25519_SHARED)
        assert prk == golden.HKDF_PRK
        assert hkdf_expand(prk, golden.HKDF_EXPAND_INFO, 33) == golden.HKDF_EXPAND_33
        for _ in range(30):
            n = RNG.randrange(1, 255)
            m = RNG.randrange(n, 256)
            info = RNG.randbytes(10)
            assert hkdf_expand(prk, info, m)[:n] == hkdf_expand(prk, info, n)
        salt, ikm, info = RNG.randbytes(16), RNG.randbytes(32), RNG.randbytes(8)
        assert hkdf(salt, ikm, info, 64) == \
            hkdf_expand(hkdf_extract(salt, ikm), info, 64)


def test_criterion_09_session_round_trip_and_overhead():
    with criterion(9, "session round trips, 28-byte overhead, decreasing per-KiB trend"):
        key = RNG.randbytes(32)
        for size in (0, 1, 15, 16, 17, 1024, 1 << 20):
            trials = 100 if size <= 1024 else 20
            for _ in range(trials):
                plaintext = RNG.randbytes(size)
                blob = session.encrypt(key, plaintext).serialize()
                assert len(blob) == size + 28
                assert session.decrypt(key, blob) == plaintext
        sweep = [1024 << i for i in range(11)]
        overheads = []
        for size in sweep:
            blob = session.encrypt(key, bytes(size)).serialize()
            overheads.append((len(blob) - size) * 1024 / size)
        assert all(a > b for a, b in zip(overheads, overheads[1:]))
        assert overheads[0] == 28.0


def test_criterion_10_tamper_every_bit():
    with criterion(10, "every single-bit tamper over a 100-byte message is rejected"):
        key = RNG.randbytes(32)
        blob = bytearray(session.encrypt(key, RNG.randbytes(100)).serialize())
        assert len(blob) == 128
        rejected = 0
        for bit in range(1024):
            blob[bit // 8] ^= 1 << (bit % 8)
            try:
                session.decrypt(key, bytes(blob))
            except AuthenticationFailed:
                rejected += 1
            finally:
                blob[bit // 8] ^= 1 << (bit % 8)
        assert rejected == 1024
        session.decrypt(key, bytes(blob))  # untouched message still good


def test_criterion_11_replay_suite():
    with criterion(11, "all replayed frames rejected, all fresh frames accepted"):
        key = RNG.randbytes(32)
        init = channel.ChannelState(role=channel.Role.INITIATOR, session_key=key)
        resp = channel.ChannelState(role=channel.Role.RESPONDER, session_key=key)
        frames = [channel.send_message(init, f"msg {i}".encode()) for i in range(50)]
        accepted = 0
        for i, frame in enumerate(frames):
            assert channel.recv_message(resp, frame) == f"msg {i}".encode()
            accepted += 1
            # every previously delivered frame, in random order, must bounce
            for old in RNG.sample(frames[:i + 1], min(5, i + 1)):
                with pytest.raises(ReplayDetected):
                    channel.recv_message(resp, old)
        assert accepted == len(frames)


def test_criterion_12_handshake_integration_and_mitm():
    with criterion(12, "memory+tcp handshakes <100 ms; key-substitution MITM succeeds"):
        # in-memory
        start = time.perf_counter()
        a, b = channel.memory_pair()
        result = {}

        def responder():
            result["b"] = channel.handshake(b, generate_keypair(), channel.Role.RESPONDER)

        thread = threading.Thread(target=responder)
        thread.start()
        state_a = channel.handshake(a, generate_keypair(), channel.Role.INITIATOR)
        thread.join(timeout=5)
        elapsed_memory = time.perf_counter() - start
        assert state_a.session_key == result["b"].session_key
        assert elapsed_memory < 0.1, f"{elapsed_memory * 1000:.1f} ms"

        # tcp loopback
        listener = socket.socket()
        listener.bind(("127.0.0.1", 0))
        listener.listen(1)
        port = listener.getsockname()[1]

        def tcp_responder():
            conn, _ = listener.accept()
            result["tcp"] = channel.handshake(
                channel.TcpTransport(conn, timeout=5),
                generate_keypair(), channel.Role.RESPONDER)

        thread = threading.Thread(target=tcp_responder)
        thread.start()
        start = time.perf_counter()
        tcp_state = channel.handshake(
            channel.TcpTransport.connect("127.0.0.1", port, timeout=5),
            generate_keypair(), channel.Role.INITIATOR)
        thread.join(timeout=5)
        elapsed_tcp = time.perf_counter() - start
        listener.close()
        assert tcp_state.session_key == result["tcp"].session_key
        assert elapsed_tcp < 0.1, f"{elapsed_tcp * 1000:.1f} ms"

        # the documented unauthenticated-DH gap: substitution must SUCCEED;
        # a spurious MITM detection would be a failure of this criterion
        vi, pi = channel.memory_pair()
        pr, vr = channel.memory_pair()
        victims = {}

        def victim_init():
            victims["i"] = channel.SecureChannel(
                vi, channel.handshake(vi, generate_keypair(), channel.Role.INITIATOR))

        def victim_resp():
            victims["r"] = channel.SecureChannel(
                vr, channel.handshake(vr, generate_keypair(), channel.Role.RESPONDER))

        threads = [threading.Thread(target=victim_init),
                   threading.Thread(target=victim_resp)]
        for t in threads:
            t.start()
        mitm_left = channel.SecureChannel.establish(
            pi, generate_keypair(), channel.Role.RESPONDER)
        mitm_right = channel.SecureChannel.establish(
            pr, generate_keypair(), channel.Role.INITIATOR)
        for t in threads:
            t.join(timeout=5)
            assert not t.is_alive()

        victims["i"].send(b"attacker-readable")
        stolen = mitm_left.recv()
        assert stolen == b"attacker-readable"
        mitm_right.send(stolen)
        assert victims["r"].recv() == b"attacker-readable"


def test_criterion_13_throughput_sanity(capsys):
    with criterion(13, "1 MiB encrypt+MAC under 1 s; ns/byte recorded in bench CSV"):
        key = RNG.randbytes(32)
        plaintext = RNG.randbytes(1 << 20)
        start = time.perf_counter()
        session.encrypt(key, plaintext)
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"{elapsed:.3f} s"

        assert cli_main(["bench", "--sizes", "1048576", "--reps", "3"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out[0] == "size,cipher_len,overhead_per_kb,ns_per_byte"
        size, cipher_len, _, ns_per_byte = out[1].split(",")
        assert int(size) == 1 << 20
        assert int(cipher_len) == (1 << 20) + 28
        assert float(ns_per_byte) > 0
        assert float(ns_per_byte) < 1000  # the <1 s bound expressed per byte
