"""Pure-Python fallback kernels.

Same function surface as the compiled module (_kernels_c): callers validate
arguments, these assume well-formed input.  The ChaCha core is unrolled over
sixteen locals, which is about 4x faster than an indexed-list version but
still orders of magnitude slower than the C code; see benchmarks/.
"""

import struct

M = 0xFFFFFFFF

CHACHA_CONSTANTS = struct.unpack("<4I", b"expand 32-byte k")


def _chacha_core(s, double_rounds=10):
    """Core rounds + feed-forward add on a 16-word initial state."""
    x0, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11, x12, x13, x14, x15 = s
    for _ in range(double_rounds):
        # column rounds
        x0 = (x0 + x4) & M; x12 ^= x0; x12 = ((x12 << 16) | (x12 >> 16)) & M
        x8 = (x8 + x12) & M; x4 ^= x8; x4 = ((x4 << 12) | (x4 >> 20)) & M
        x0 = (x0 + x4) & M; x12 ^= x0; x12 = ((x12 << 8) | (x12 >> 24)) & M
        x8 = (x8 + x12) & M; x4 ^= x8; x4 = ((x4 << 7) | (x4 >> 25)) & M
        x1 = (x1 + x5) & M; x13 ^= x1; x13 = ((x13 << 16) | (x13 >> 16)) & M
        x9 = (x9 + x13) & M; x5 ^= x9; x5 = ((x5 << 12) | (x5 >> 20)) & M
        x1 = (x1 + x5) & M; x13 ^= x1; x13 = ((x13 << 8) | (x13 >> 24)) & M
        x9 = (x9 + x13) & M; x5 ^= x9; x5 = ((x5 << 7) | (x5 >> 25)) & M
        x2 = (x2 + x6) & M; x14 ^= x2; x14 = ((x14 << 16) | (x14 >> 16)) & M
        x10 = (x10 + x14) & M; x6 ^= x10; x6 = ((x6 << 12) | (x6 >> 20)) & M
        x2 = (x2 + x6) & M; x14 ^= x2; x14 = ((x14 << 8) | (x14 >> 24)) & M
        x10 = (x10 + x14) & M; x6 ^= x10; x6 = ((x6 << 7) | (x6 >> 25)) & M
        x3 = (x3 + x7) & M; x15 ^= x3; x15 = ((x15 << 16) | (x15 >> 16)) & M
        x11 = (x11 + x15) & M; x7 ^= x11; x7 = ((x7 << 12) | (x7 >> 20)) & M
        x3 = (x3 + x7) & M; x15 ^= x3; x15 = ((x15 << 8) | (x15 >> 24)) & M
        x11 = (x11 + x15) & M; x7 ^= x11; x7 = ((x7 << 7) | (x7 >> 25)) & M
        # diagonal rounds
        x0 = (x0 + x5) & M; x15 ^= x0; x15 = ((x15 << 16) | (x15 >> 16)) & M
        x10 = (x10 + x15) & M; x5 ^= x10; x5 = ((x5 << 12) | (x5 >> 20)) & M
        x0 = (x0 + x5) & M; x15 ^= x0; x15 = ((x15 << 8) | (x15 >> 24)) & M
        x10 = (x10 + x15) & M; x5 ^= x10; x5 = ((x5 << 7) | (x5 >> 25)) & M
        x1 = (x1 + x6) & M; x12 ^= x1; x12 = ((x12 << 16) | (x12 >> 16)) & M
        x11 = (x11 + x12) & M; x6 ^= x11; x6 = ((x6 << 12) | (x6 >> 20)) & M
        x1 = (x1 + x6) & M; x12 ^= x1; x12 = ((x12 << 8) | (x12 >> 24)) & M
        x11 = (x11 + x12) & M; x6 ^= x11; x6 = ((x6 << 7) | (x6 >> 25)) & M
        x2 = (x2 + x7) & M; x13 ^= x2; x13 = ((x13 << 16) | (x13 >> 16)) & M
        x8 = (x8 + x13) & M; x7 ^= x8; x7 = ((x7 << 12) | (x7 >> 20)) & M
        x2 = (x2 + x7) & M; x13 ^= x2; x13 = ((x13 << 8) | (x13 >> 24)) & M
        x8 = (x8 + x13) & M; x7 ^= x8; x7 = ((x7 << 7) | (x7 >> 25)) & M
        x3 = (x3 + x4) & M; x14 ^= x3; x14 = ((x14 << 16) | (x14 >> 16)) & M
        x9 = (x9 + x14) & M; x4 ^= x9; x4 = ((x4 << 12) | (x4 >> 20)) & M
        x3 = (x3 + x4) & M; x14 ^= x3; x14 = ((x14 << 8) | (x14 >> 24)) & M
        x9 = (x9 + x14) & M; x4 ^= x9; x4 = ((x4 << 7) | (x4 >> 25)) & M
    out = (x0, x1, x2, x3, x4, x5, x6, x7,
           x8, x9, x10, x11, x12, x13, x14, x15)
    return tuple((a + b) & M for a, b in zip(out, s))


def _chacha_state(key, counter, nonce):
    return (CHACHA_CONSTANTS
            + struct.unpack("<8I", key)
            + (counter,)
            + struct.unpack("<3I", nonce))


def chacha20_block(key, counter, nonce):
    return struct.pack("<16I", *_chacha_core(_chacha_state(key, counter, nonce)))


def chacha20_block_words(key, counter, nonce, double_rounds):
    """Block words after a chosen number of double rounds (test hook)."""
    return _chacha_core(_chacha_state(key, counter, nonce), double_rounds)


def chacha20_xor(key, nonce, initial_counter, data):
    out = bytearray(data)
    n = len(data)
    counter = initial_counter
    for off in range(0, n, 64):
        block = chacha20_block(key, counter, nonce)
        counter += 1
        end = min(off + 64, n)
        for i in range(off, end):
            out[i] ^= block[i - off]
    return bytes(out)


# --- poly1305 -----------------------------------------------------------------

_POLY_P = (1 << 130) - 5
_R_CLAMP = 0x0FFFFFFC0FFFFFFC0FFFFFFC0FFFFFFF
_HIBIT = 1 << 128


def poly1305_tag(key, message):
    r = int.from_bytes(key[:16], "little") & _R_CLAMP
    s = int.from_bytes(key[16:32], "little")
    acc = 0
    full_end = len(message) - (len(message) % 16)
    for i in range(0, full_end, 16):
        acc = (acc + _HIBIT + int.from_bytes(message[i:i + 16], "little")) * r % _POLY_P
    if full_end < len(message):
        tail = message[full_end:]
        acc = (acc + (1 << (8 * len(tail))) + int.from_bytes(tail, "little")) * r % _POLY_P
    return ((acc + s) & (_HIBIT - 1)).to_bytes(16, "little")


# --- blake2s ------------------------------------------------------------------

_B2S_IV = (0x6A09E667, 0xBB67AE85, 0x3C6EF372, 0xA54FF53A,
           0x510E527F, 0x9B05688C, 0x1F83D9AB, 0x5BE0CD19)

_B2S_SIGMA = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15),
    (14, 10, 4, 8, 9, 15, 13, 6, 1, 12, 0, 2, 11, 7, 5, 3),
    (11, 8, 12, 0, 5, 2, 15, 13, 10, 14, 3, 6, 7, 1, 9, 4),
    (7, 9, 3, 1, 13, 12, 11, 14, 2, 6, 5, 10, 4, 0, 15, 8),
    (9, 0, 5, 7, 2, 4, 10, 15, 14, 1, 11, 12, 6, 8, 3, 13),
    (2, 12, 6, 10, 0, 11, 8, 3, 4, 13, 7, 5, 15, 14, 1, 9),
    (12, 5, 1, 15, 14, 13, 4, 10, 0, 7, 6, 3, 9, 2, 8, 11),
    (13, 11, 7, 14, 12, 1, 3, 9, 5, 0, 15, 4, 8, 6, 2, 10),
    (6, 15, 14, 9, 11, 3, 0, 8, 12, 2, 13, 7, 1, 4, 10, 5),
    (10, 2, 8, 4, 7, 6, 1, 5, 15, 11, 9, 14, 3, 12, 13, 0),
)

_B2S_STEPS = ((0, 4, 8, 12), (1, 5, 9, 13), (2, 6, 10, 14), (3, 7, 11, 15),
              (0, 5, 10, 15), (1, 6, 11, 12), (2, 7, 8, 13), (3, 4, 9, 14))


def _b2s_compress(h, block, t, last):
    m = struct.unpack("<16I", block)
    v = list(h) + list(_B2S_IV)
    v[12] ^= t & M
    v[13] ^= (t >> 32) & M
    if last:
        v[14] ^= M
    for rnd in range(10):
        s = _B2S_SIGMA[rnd]
        for step, (a, b, c, d) in enumerate(_B2S_STEPS):
            va, vb, vc, vd = v[a], v[b], v[c], v[d]
            va = (va + vb + m[s[2 * step]]) & M
            vd ^= va
            vd = (vd >> 16) | ((vd << 16) & M)
            vc = (vc + vd) & M
            vb ^= vc
            vb = (vb >> 12) | ((vb << 20) & M)
            va = (va + vb + m[s[2 * step + 1]]) & M
            vd ^= va
            vd = (vd >> 8) | ((vd << 24) & M)
            vc = (vc + vd) & M
            vb ^= vc
            vb = (vb >> 7) | ((vb << 25) & M)
            v[a], v[b], v[c], v[d] = va, vb, vc, vd
    return [h[i] ^ v[i] ^ v[i + 8] for i in range(8)]


def blake2s_digest(data, key, digest_length):
    h = list(_B2S_IV)
    h[0] ^= 0x01010000 ^ (len(key) << 8) ^ digest_length
    buf = key + bytes(64 - len(key)) + data if key else bytes(data)
    t = 0
    offset = 0
    while len(buf) - offset > 64:
        t += 64
        h = _b2s_compress(h, buf[offset:offset + 64], t, False)
        offset += 64
    # exactly one block remains (possibly empty), so the finalization flag
    # below is applied exactly once
    final = buf[offset:]
    assert len(final) <= 64
    t += len(final)
    h = _b2s_compress(h, final + bytes(64 - len(final)), t, True)
    return struct.pack("<8I", *h)[:digest_length]


# --- x25519 -------------------------------------------------------------------

P = 2**255 - 19
_A24 = 121665


def x25519_scalarmult(scalar, u):
    k = int.from_bytes(
        bytes((scalar[0] & 248,)) + scalar[1:31] + bytes(((scalar[31] & 127) | 64,)),
        "little")
    x1 = (int.from_bytes(u, "little") & ((1 << 255) - 1)) % P
    x2, z2, x3, z3 = 1, 0, x1, 1
    swap = 0
    for t in range(254, -1, -1):
        kt = (k >> t) & 1
        swap ^= kt
        # branchless conditional swap: mask is 0 or all-ones in effect
        mask = -swap
        dummy = mask & (x2 ^ x3); x2 ^= dummy; x3 ^= dummy
        dummy = mask & (z2 ^ z3); z2 ^= dummy; z3 ^= dummy
        swap = kt
        a = (x2 + z2) % P
        aa = a * a % P
        b = (x2 - z2) % P
        bb = b * b % P
        e = (aa - bb) % P
        c = (x3 + z3) % P
        d = (x3 - z3) % P
        da = d * a % P
        cb = c * b % P
        t0 = da + cb
        x3 = t0 * t0 % P
        t1 = da - cb
        z3 = x1 * (t1 * t1) % P
        x2 = aa * bb % P
        z2 = e * (aa + _A24 * e) % P
    mask = -swap
    dummy = mask & (x2 ^ x3); x2 ^= dummy; x3 ^= dummy
    dummy = mask & (z2 ^ z3); z2 ^= dummy; z3 ^= dummy
    return (x2 * pow(z2, P - 2, P) % P).to_bytes(32, "little")
