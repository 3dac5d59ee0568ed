"""Transport layer: framing, handshake, counter nonces, replay rejection.

Wire protocol, in order: one frame carrying the initiator's 32-byte public
key, one frame carrying the responder's, then any number of frames each
carrying one serialized encrypted message.  A frame is a 4-byte big-endian
length followed by that many payload bytes, capped at 16 MiB.

Channel messages use counter nonces instead of random ones: direction byte
(0x01 initiator->responder, 0x02 back) || 3 zero bytes || 8-byte big-endian
send counter.  The receiver keeps a high watermark and rejects any counter
at or below it, so every replayed or reflected frame is refused.  Both
directions share one session key; the direction byte keeps their nonce
spaces disjoint.  On any authentication or replay failure the channel is
closed, not resynchronized.
"""

import enum
import socket
import struct
import threading
from dataclasses import dataclass

from . import session
from . import x25519 as _x25519
from .errors import (
    CounterExhausted,
    Disconnected,
    FrameTooLarge,
    HandshakeMalformed,
    MalformedMessage,
    ReplayDetected,
    WrongDirection,
)

MAX_FRAME_PAYLOAD = 1 << 24  # 16 MiB
FRAME_HEADER_SIZE = 4
MAX_SEND_COUNTER = 2**64 - 2  # highest counter actually usable
DEFAULT_PORT = 4525
DEFAULT_TIMEOUT = 30.0


# --- framing codec ---------------------------------------------------------------


@dataclass(frozen=True)
class Frame:
    payload: bytes

    @property
    def length(self):
        return len(self.payload)


def frame_encode(payload):
    """4-byte big-endian length, then the payload."""
    if len(payload) > MAX_FRAME_PAYLOAD:
        raise FrameTooLarge(f"payload of {len(payload)} bytes exceeds {MAX_FRAME_PAYLOAD}")
    return struct.pack(">I", len(payload)) + bytes(payload)


def frame_decode(data):
    """Decode one frame from the head of `data`.

    Returns (Frame, bytes_consumed), or None when more bytes are needed.
    An oversized length field is rejected as soon as the header is present,
    before any payload arrives.
    """
    if len(data) < FRAME_HEADER_SIZE:
        return None
    length = struct.unpack(">I", data[:FRAME_HEADER_SIZE])[0]
    if length > MAX_FRAME_PAYLOAD:
        raise FrameTooLarge(f"declared length {length} exceeds {MAX_FRAME_PAYLOAD}")
    if len(data) < FRAME_HEADER_SIZE + length:
        return None
    end = FRAME_HEADER_SIZE + length
    return Frame(payload=bytes(data[FRAME_HEADER_SIZE:end])), end


class FrameDecoder:
    """Incremental decoder: feed arbitrary chunks, get complete frames."""

    def __init__(self):
        self._buf = bytearray()

    def feed(self, data):
        self._buf += data
        frames = []
        while True:
            decoded = frame_decode(self._buf)
            if decoded is None:
                return frames
            frame, consumed = decoded
            del self._buf[:consumed]
            frames.append(frame)

    @property
    def pending(self):
        return len(self._buf)


# --- channel state machine ---------------------------------------------------------


class Role(enum.Enum):
    INITIATOR = 0x01
    RESPONDER = 0x02

    @property
    def direction_byte(self):
        return self.value

    @property
    def peer_direction_byte(self):
        return 0x02 if self is Role.INITIATOR else 0x01


@dataclass
class ChannelState:
    role: Role
    session_key: bytes
    send_counter: int = 0
    recv_high_watermark: int = -1


def build_nonce(direction_byte, counter):
    return struct.pack(">B3xQ", direction_byte, counter)


def send_message(state, plaintext):
    """Encrypt the next outgoing message into a Frame; advances the counter."""
    if state.send_counter > MAX_SEND_COUNTER:
        raise CounterExhausted("send counter exhausted; re-establish the session")
    nonce = build_nonce(state.role.direction_byte, state.send_counter)
    state.send_counter += 1
    msg = session.encrypt(state.session_key, plaintext, nonce=nonce)
    return Frame(payload=msg.serialize())


def recv_message(state, frame):
    """Validate direction, freshness, and tag; return the plaintext.

    The watermark only advances after the tag verifies, so a failed frame
    never blocks the counter it claimed.
    """
    payload = frame.payload
    if len(payload) < session.OVERHEAD:
        raise MalformedMessage(
            f"message frame needs at least {session.OVERHEAD} bytes, got {len(payload)}")
    if payload[0] != state.role.peer_direction_byte:
        raise WrongDirection(
            f"expected direction 0x{state.role.peer_direction_byte:02x}, got 0x{payload[0]:02x}")
    counter = struct.unpack(">Q", payload[4:12])[0]
    if counter <= state.recv_high_watermark:
        raise ReplayDetected(
            f"counter {counter} not above watermark {state.recv_high_watermark}")
    plaintext = session.decrypt(state.session_key, payload)
    state.recv_high_watermark = counter
    return plaintext


# --- handshake over a transport -----------------------------------------------------


def handshake(transport, keypair, role):
    """Exchange raw public keys (initiator first) and derive the session key.

    The keys are unauthenticated, so this establishes a private channel to
    *somebody*; an active man-in-the-middle can substitute both keys.
    """
    own_priv, own_pub = keypair
    try:
        if role is Role.INITIATOR:
            write_frame(transport, own_pub)
            peer_pub = _read_handshake_key(transport)
        else:
            peer_pub = _read_handshake_key(transport)
            write_frame(transport, own_pub)
        shared = session.perform_key_exchange(own_priv, peer_pub)
        key = session.derive_session_key(shared, own_pub, peer_pub)
    except Exception:
        transport.close()
        raise
    return ChannelState(role=role, session_key=key)


def _read_handshake_key(transport):
    payload = read_frame(transport)
    if payload is None:
        raise Disconnected("peer closed during handshake")
    if len(payload) != _x25519.KEY_SIZE:
        raise HandshakeMalformed(
            f"handshake frame must carry {_x25519.KEY_SIZE} bytes, got {len(payload)}")
    return payload


# --- blocking frame I/O ---------------------------------------------------------------


def write_frame(transport, payload):
    transport.sendall(frame_encode(payload))


def read_frame(transport):
    """One frame payload; None on clean end-of-stream between frames."""
    header = _read_exact(transport, FRAME_HEADER_SIZE, allow_eof=True)
    if header is None:
        return None
    length = struct.unpack(">I", header)[0]
    if length > MAX_FRAME_PAYLOAD:
        raise FrameTooLarge(f"declared length {length} exceeds {MAX_FRAME_PAYLOAD}")
    return _read_exact(transport, length)


def _read_exact(transport, n, allow_eof=False):
    buf = bytearray()
    while len(buf) < n:
        chunk = transport.recv(n - len(buf))
        if not chunk:
            if allow_eof and not buf:
                return None
            raise Disconnected(f"end of stream after {len(buf)} of {n} bytes")
        buf += chunk
    return bytes(buf)


class SecureChannel:
    """A handshaken transport: send/recv plaintext messages in order."""

    def __init__(self, transport, state):
        self.transport = transport
        self.state = state

    @classmethod
    def establish(cls, transport, keypair, role):
        return cls(transport, handshake(transport, keypair, role))

    def send(self, plaintext):
        write_frame(self.transport, send_message(self.state, plaintext).payload)

    def recv(self):
        """Next plaintext, or None when the peer closed cleanly."""
        payload = read_frame(self.transport)
        if payload is None:
            return None
        return recv_message(self.state, Frame(payload=payload))

    def close(self):
        self.transport.close()


# --- transports ------------------------------------------------------------------------


class _Pipe:
    """One direction of an in-memory byte stream."""

    def __init__(self, timeout):
        self._buf = bytearray()
        self._eof = False
        self._cond = threading.Condition()
        self._timeout = timeout

    def write(self, data):
        with self._cond:
            if self._eof:
                raise Disconnected("pipe closed")
            self._buf += data
            self._cond.notify_all()

    def read(self, max_bytes):
        with self._cond:
            if not self._cond.wait_for(lambda: self._buf or self._eof,
                                       timeout=self._timeout):
                raise Disconnected("in-memory transport read timed out")
            if not self._buf:
                return b""
            chunk = bytes(self._buf[:max_bytes])
            del self._buf[:max_bytes]
            return chunk

    def close(self):
        with self._cond:
            self._eof = True
            self._cond.notify_all()


class MemoryTransport:
    """One endpoint of an in-process duplex byte stream."""

    def __init__(self, read_pipe, write_pipe):
        self._read = read_pipe
        self._write = write_pipe

    def sendall(self, data):
        self._write.write(data)

    def recv(self, max_bytes):
        return self._read.read(max_bytes)

    def shutdown_send(self):
        self._write.close()

    def close(self):
        self._write.close()
        self._read.close()


def memory_pair(timeout=DEFAULT_TIMEOUT):
    """Two connected in-memory endpoints (initiator side first)."""
    a_to_b = _Pipe(timeout)
    b_to_a = _Pipe(timeout)
    return (MemoryTransport(b_to_a, a_to_b), MemoryTransport(a_to_b, b_to_a))


class TcpTransport:
    """Thin blocking wrapper over a connected TCP socket."""

    def __init__(self, sock, timeout=DEFAULT_TIMEOUT):
        sock.settimeout(timeout)
        self._sock = sock

    @classmethod
    def connect(cls, host, port=DEFAULT_PORT, timeout=DEFAULT_TIMEOUT):
        return cls(socket.create_connection((host, port), timeout=timeout), timeout)

    def sendall(self, data):
        self._sock.sendall(data)

    def recv(self, max_bytes):
        try:
            return self._sock.recv(max_bytes)
        except socket.timeout as exc:
            raise Disconnected("tcp read timed out") from exc
        except OSError:
            return b""

    def shutdown_send(self):
        try:
            self._sock.shutdown(socket.SHUT_WR)
        except OSError:
            pass

    def close(self):
        try:
            self._sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self._sock.close()
