"""Command-line tool: key management, file encryption, demo channel, bench.

Commands: keygen, encrypt, decrypt, serve, connect, bench, vectors.
Exit codes: 0 ok, 2 authentication failure, 3 malformed input, 4 I/O error.
Set EJAFA_NO_COLOR to disable styling.
"""

import argparse
import os
import socket
import sys
import threading
import time

from . import golden, session, x25519
from ._backend import BACKEND
from .channel import DEFAULT_PORT, Role, SecureChannel, TcpTransport
from .errors import (
    AuthenticationFailed,
    EjafaError,
    InvalidLength,
    InvalidParam,
    MalformedMessage,
)

DEFAULT_BENCH_SIZES = [1024 << i for i in range(11)]  # 1 KiB .. 1 MiB


def _use_color():
    return sys.stdout.isatty() and not os.environ.get("EJAFA_NO_COLOR")


def _status(ok):
    if _use_color():
        return "\x1b[32mPASS\x1b[0m" if ok else "\x1b[31mFAIL\x1b[0m"
    return "PASS" if ok else "FAIL"


def _warn(text):
    print(f"ejafa: WARNING: {text}", file=sys.stderr)


# --- key files -------------------------------------------------------------------


def read_key_file(path):
    """32 raw bytes, or 64 hex characters with optional trailing newline."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) == 32:
        return blob
    text = blob.decode("ascii", "replace").strip()
    if len(text) == 64:
        try:
            return bytes.fromhex(text)
        except ValueError:
            pass
    raise MalformedMessage(f"{path}: expected 32 raw bytes or 64 hex characters")


def write_key_file(path, key):
    with open(path, "wb") as fh:
        fh.write(key)


# --- commands ----------------------------------------------------------------------


def cmd_keygen(args):
    if args.entropy_hex is not None:
        _warn("--entropy-hex is for tests and reproducible vectors only; "
              "keys made this way are not secret")
        entropy = bytes.fromhex(args.entropy_hex)
        if len(entropy) != 32:
            raise InvalidLength("--entropy-hex must decode to 32 bytes")
    else:
        entropy = None
    private, public = x25519.generate_keypair(entropy)
    if x25519.x25519(private, x25519.BASEPOINT) != public:
        raise EjafaError("keypair self-check failed")
    write_key_file(args.out + ".priv", private.clamped)
    write_key_file(args.out + ".pub", public)
    print(public.hex())
    return 0


def _session_key_from_files(key_path, peer_path):
    own_priv = x25519.clamp(read_key_file(key_path))
    own_pub = x25519.x25519(own_priv, x25519.BASEPOINT)
    peer_pub = read_key_file(peer_path)
    shared = session.perform_key_exchange(own_priv, peer_pub)
    return session.derive_session_key(shared, own_pub, peer_pub)


def cmd_encrypt(args):
    key = _session_key_from_files(args.key, args.peer)
    nonce = None
    if args.nonce_hex is not None:
        _warn("--nonce-hex reuses a fixed nonce; never do this outside tests")
        nonce = bytes.fromhex(args.nonce_hex)
        if len(nonce) != session.NONCE_SIZE:
            raise InvalidLength(f"--nonce-hex must decode to {session.NONCE_SIZE} bytes")
    with open(args.infile, "rb") as fh:
        plaintext = fh.read()
    blob = session.encrypt(key, plaintext, nonce=nonce).serialize()
    with open(args.outfile, "wb") as fh:
        fh.write(blob)
    return 0


def cmd_decrypt(args):
    key = _session_key_from_files(args.key, args.peer)
    with open(args.infile, "rb") as fh:
        blob = fh.read()
    plaintext = session.decrypt(key, blob)
    with open(args.outfile, "wb") as fh:
        fh.write(plaintext)
    return 0


# --- demo channel ---------------------------------------------------------------------


def _parse_addr(addr):
    host, sep, port = addr.rpartition(":")
    if not sep:
        return addr, DEFAULT_PORT
    return host, int(port)


def _load_or_make_keypair(key_path):
    if key_path is None:
        return x25519.generate_keypair()
    private = x25519.clamp(read_key_file(key_path))
    return private, x25519.x25519(private, x25519.BASEPOINT)


def _pump(channel):
    """stdin lines out, received messages to stdout; returns an exit code."""
    status = {"code": 0}

    def drain():
        try:
            while True:
                msg = channel.recv()
                if msg is None:
                    return
                sys.stdout.write(msg.decode("utf-8", "replace") + "\n")
                sys.stdout.flush()
        except AuthenticationFailed as exc:
            status["code"] = 2
            print(f"ejafa: authentication failure: {exc}", file=sys.stderr)
        except EjafaError as exc:
            status["code"] = 1
            print(f"ejafa: receive failed: {exc}", file=sys.stderr)

    reader = threading.Thread(target=drain, daemon=True)
    reader.start()
    try:
        for line in sys.stdin:
            channel.send(line.rstrip("\n").encode())
    except EjafaError:
        pass  # reader reports the interesting failure
    channel.transport.shutdown_send()
    reader.join()
    channel.close()
    return status["code"]


def cmd_serve(args):
    host, port = _parse_addr(args.addr)
    keypair = _load_or_make_keypair(args.key)
    listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    listener.bind((host, port))
    listener.listen(1)
    bound_host, bound_port = listener.getsockname()[:2]
    print(f"ejafa: listening on {bound_host}:{bound_port}", file=sys.stderr, flush=True)
    conn, peer = listener.accept()
    listener.close()
    print(f"ejafa: connection from {peer[0]}:{peer[1]}", file=sys.stderr, flush=True)
    channel = SecureChannel.establish(TcpTransport(conn), keypair, Role.RESPONDER)
    return _pump(channel)


def cmd_connect(args):
    host, port = _parse_addr(args.addr)
    keypair = _load_or_make_keypair(args.key)
    transport = TcpTransport.connect(host, port)
    channel = SecureChannel.establish(transport, keypair, Role.INITIATOR)
    return _pump(channel)


# --- bench and vectors ------------------------------------------------------------------


def cmd_bench(args):
    sizes = ([int(s) for s in args.sizes.split(",")] if args.sizes
             else DEFAULT_BENCH_SIZES)
    if any(s <= 0 for s in sizes):
        raise InvalidParam("sizes must be positive")
    reps = args.reps
    key = os.urandom(32)
    print("size,cipher_len,overhead_per_kb,ns_per_byte")
    for size in sizes:
        plaintext = os.urandom(size)
        cipher_len = None
        total_ns = 0
        for _ in range(reps):
            start = time.perf_counter_ns()
            msg = session.encrypt(key, plaintext)
            total_ns += time.perf_counter_ns() - start
            cipher_len = len(msg.serialize())
        overhead_per_kb = (cipher_len - size) * 1024 / size
        ns_per_byte = total_ns / (reps * size)
        print(f"{size},{cipher_len},{overhead_per_kb:.4f},{ns_per_byte:.2f}")
    return 0


def cmd_vectors(args):
    failures = 0

    def show(label, got, want):
        nonlocal failures
        ok = got == want
        failures += not ok
        shown = got.hex() if isinstance(got, bytes) else got
        print(f"  {label:<26} {shown}  {_status(ok)}")

    print(f"backend: {BACKEND}")
    print("x25519")
    alice = x25519.clamp(golden.X25519_ALICE_PRIV)
    bob = x25519.clamp(golden.X25519_BOB_PRIV)
    show("alice public", x25519.x25519(alice, x25519.BASEPOINT), golden.X25519_ALICE_PUB)
    show("bob public", x25519.x25519(bob, x25519.BASEPOINT), golden.X25519_BOB_PUB)
    show("shared secret", x25519.x25519(alice, golden.X25519_BOB_PUB), golden.X25519_SHARED)

    from .blake2s import blake2s
    from .chacha20 import chacha20_block
    from .hkdf import hkdf_expand
    from .poly1305 import poly1305_tag

    print("chacha20")
    show("zero-state block", chacha20_block(bytes(32), 0, bytes(12)),
         golden.CHACHA20_ZERO_BLOCK)
    print("poly1305")
    show("keyed-hash tag", poly1305_tag(golden.POLY1305_KEY, golden.POLY1305_MESSAGE),
         golden.POLY1305_TAG)
    print("blake2s")
    show("empty digest", blake2s(b""), golden.BLAKE2S_EMPTY)
    show("'abc' digest", blake2s(b"abc"), golden.BLAKE2S_ABC)
    print("hkdf")
    show("expand 33 bytes", hkdf_expand(golden.HKDF_PRK, golden.HKDF_EXPAND_INFO, 33),
         golden.HKDF_EXPAND_33)
    print("session")
    shared = session.perform_key_exchange(alice, golden.X25519_BOB_PUB)
    show("derived session key",
         session.derive_session_key(shared, golden.X25519_ALICE_PUB, golden.X25519_BOB_PUB),
         golden.SESSION_KEY)
    msg = session.encrypt(golden.SESSION_KEY, golden.SESSION_PLAINTEXT,
                          nonce=golden.SESSION_NONCE)
    show("golden message", msg.serialize(), golden.SESSION_ENCRYPTED)
    show("golden decrypts",
         session.decrypt(golden.SESSION_KEY, golden.SESSION_ENCRYPTED),
         golden.SESSION_PLAINTEXT)

    print(("all vectors " + _status(True)) if not failures
          else f"{failures} vector(s) " + _status(False))
    return 0 if not failures else 1


# --- entry point ------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ejafa",
        description="Secure-channel toolkit: X25519 + ChaCha20 + Poly1305 + "
                    "BLAKE2s-HKDF over length-prefixed frames.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a keypair into <out>.priv/<out>.pub")
    p.add_argument("out", help="output path prefix")
    p.add_argument("--entropy-hex", help="fixed entropy (testing only)")
    p.set_defaults(func=cmd_keygen)

    for name, func in (("encrypt", cmd_encrypt), ("decrypt", cmd_decrypt)):
        p = sub.add_parser(name, help=f"{name} a file for/from a peer")
        p.add_argument("--key", required=True, help="own private key file")
        p.add_argument("--peer", required=True, help="peer public key file")
        p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--out", dest="outfile", required=True)
        if name == "encrypt":
            p.add_argument("--nonce-hex", help="fixed nonce (testing only)")
        p.set_defaults(func=func)

    p = sub.add_parser("serve", help="accept one connection and pipe stdin/stdout")
    p.add_argument("--addr", default=f"127.0.0.1:{DEFAULT_PORT}")
    p.add_argument("--key", help="own private key file (ephemeral if omitted)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("connect", help="connect to a server and pipe stdin/stdout")
    p.add_argument("--addr", default=f"127.0.0.1:{DEFAULT_PORT}")
    p.add_argument("--key", help="own private key file (ephemeral if omitted)")
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("bench", help="encryption overhead and speed sweep (CSV)")
    p.add_argument("--sizes", help="comma-separated plaintext sizes in bytes")
    p.add_argument("--reps", type=int, default=5)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("vectors", help="check and print the frozen test vectors")
    p.set_defaults(func=cmd_vectors)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AuthenticationFailed as exc:
        print(f"ejafa: authentication failure: {exc}", file=sys.stderr)
        return 2
    except (MalformedMessage, InvalidLength, InvalidParam) as exc:
        print(f"ejafa: malformed input: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"ejafa: i/o error: {exc}", file=sys.stderr)
        return 4
    except EjafaError as exc:
        print(f"ejafa: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
