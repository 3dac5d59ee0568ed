# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: ChaCha20 block/stream, Poly1305, BLAKE2s, X25519.

Mirrors the function surface of _kernels_pure.  Field arithmetic for X25519
uses five 51-bit limbs with 128-bit intermediate products; Poly1305 uses five
26-bit limbs with 64-bit accumulators.  Secret-dependent control flow is
avoided throughout (conditional swaps are mask arithmetic).
"""

from libc.stdint cimport uint8_t, uint32_t, uint64_t
from libc.string cimport memcpy

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


# --- little-endian loads/stores -------------------------------------------------

cdef inline uint32_t le32(const uint8_t *p):
    return (<uint32_t>p[0]) | (<uint32_t>p[1] << 8) | (<uint32_t>p[2] << 16) | (<uint32_t>p[3] << 24)

cdef inline void st32(uint8_t *p, uint32_t v):
    p[0] = <uint8_t>v
    p[1] = <uint8_t>(v >> 8)
    p[2] = <uint8_t>(v >> 16)
    p[3] = <uint8_t>(v >> 24)

cdef inline uint64_t le64(const uint8_t *p):
    return (<uint64_t>le32(p)) | (<uint64_t>le32(p + 4) << 32)

cdef inline void st64(uint8_t *p, uint64_t v):
    st32(p, <uint32_t>v)
    st32(p + 4, <uint32_t>(v >> 32))


# --- chacha20 -------------------------------------------------------------------

cdef void _chacha_init(uint32_t *s, const uint8_t *key, uint32_t counter,
                       const uint8_t *nonce):
    s[0] = 0x61707865; s[1] = 0x3320646E; s[2] = 0x79622D32; s[3] = 0x6B206574
    cdef int i
    for i in range(8):
        s[4 + i] = le32(key + 4 * i)
    s[12] = counter
    s[13] = le32(nonce)
    s[14] = le32(nonce + 4)
    s[15] = le32(nonce + 8)


cdef void _chacha_core(uint8_t *out, const uint32_t *s, int double_rounds):
    cdef uint32_t x0 = s[0], x1 = s[1], x2 = s[2], x3 = s[3]
    cdef uint32_t x4 = s[4], x5 = s[5], x6 = s[6], x7 = s[7]
    cdef uint32_t x8 = s[8], x9 = s[9], x10 = s[10], x11 = s[11]
    cdef uint32_t x12 = s[12], x13 = s[13], x14 = s[14], x15 = s[15]
    cdef int i
    for i in range(double_rounds):
        # column rounds
        x0 = x0 + x4; x12 = x12 ^ x0; x12 = (x12 << 16) | (x12 >> 16)
        x8 = x8 + x12; x4 = x4 ^ x8; x4 = (x4 << 12) | (x4 >> 20)
        x0 = x0 + x4; x12 = x12 ^ x0; x12 = (x12 << 8) | (x12 >> 24)
        x8 = x8 + x12; x4 = x4 ^ x8; x4 = (x4 << 7) | (x4 >> 25)
        x1 = x1 + x5; x13 = x13 ^ x1; x13 = (x13 << 16) | (x13 >> 16)
        x9 = x9 + x13; x5 = x5 ^ x9; x5 = (x5 << 12) | (x5 >> 20)
        x1 = x1 + x5; x13 = x13 ^ x1; x13 = (x13 << 8) | (x13 >> 24)
        x9 = x9 + x13; x5 = x5 ^ x9; x5 = (x5 << 7) | (x5 >> 25)
        x2 = x2 + x6; x14 = x14 ^ x2; x14 = (x14 << 16) | (x14 >> 16)
        x10 = x10 + x14; x6 = x6 ^ x10; x6 = (x6 << 12) | (x6 >> 20)
        x2 = x2 + x6; x14 = x14 ^ x2; x14 = (x14 << 8) | (x14 >> 24)
        x10 = x10 + x14; x6 = x6 ^ x10; x6 = (x6 << 7) | (x6 >> 25)
        x3 = x3 + x7; x15 = x15 ^ x3; x15 = (x15 << 16) | (x15 >> 16)
        x11 = x11 + x15; x7 = x7 ^ x11; x7 = (x7 << 12) | (x7 >> 20)
        x3 = x3 + x7; x15 = x15 ^ x3; x15 = (x15 << 8) | (x15 >> 24)
        x11 = x11 + x15; x7 = x7 ^ x11; x7 = (x7 << 7) | (x7 >> 25)
        # diagonal rounds
        x0 = x0 + x5; x15 = x15 ^ x0; x15 = (x15 << 16) | (x15 >> 16)
        x10 = x10 + x15; x5 = x5 ^ x10; x5 = (x5 << 12) | (x5 >> 20)
        x0 = x0 + x5; x15 = x15 ^ x0; x15 = (x15 << 8) | (x15 >> 24)
        x10 = x10 + x15; x5 = x5 ^ x10; x5 = (x5 << 7) | (x5 >> 25)
        x1 = x1 + x6; x12 = x12 ^ x1; x12 = (x12 << 16) | (x12 >> 16)
        x11 = x11 + x12; x6 = x6 ^ x11; x6 = (x6 << 12) | (x6 >> 20)
        x1 = x1 + x6; x12 = x12 ^ x1; x12 = (x12 << 8) | (x12 >> 24)
        x11 = x11 + x12; x6 = x6 ^ x11; x6 = (x6 << 7) | (x6 >> 25)
        x2 = x2 + x7; x13 = x13 ^ x2; x13 = (x13 << 16) | (x13 >> 16)
        x8 = x8 + x13; x7 = x7 ^ x8; x7 = (x7 << 12) | (x7 >> 20)
        x2 = x2 + x7; x13 = x13 ^ x2; x13 = (x13 << 8) | (x13 >> 24)
        x8 = x8 + x13; x7 = x7 ^ x8; x7 = (x7 << 7) | (x7 >> 25)
        x3 = x3 + x4; x14 = x14 ^ x3; x14 = (x14 << 16) | (x14 >> 16)
        x9 = x9 + x14; x4 = x4 ^ x9; x4 = (x4 << 12) | (x4 >> 20)
        x3 = x3 + x4; x14 = x14 ^ x3; x14 = (x14 << 8) | (x14 >> 24)
        x9 = x9 + x14; x4 = x4 ^ x9; x4 = (x4 << 7) | (x4 >> 25)
    st32(out, x0 + s[0]); st32(out + 4, x1 + s[1])
    st32(out + 8, x2 + s[2]); st32(out + 12, x3 + s[3])
    st32(out + 16, x4 + s[4]); st32(out + 20, x5 + s[5])
    st32(out + 24, x6 + s[6]); st32(out + 28, x7 + s[7])
    st32(out + 32, x8 + s[8]); st32(out + 36, x9 + s[9])
    st32(out + 40, x10 + s[10]); st32(out + 44, x11 + s[11])
    st32(out + 48, x12 + s[12]); st32(out + 52, x13 + s[13])
    st32(out + 56, x14 + s[14]); st32(out + 60, x15 + s[15])


def chacha20_block(const uint8_t[::1] key, counter, const uint8_t[::1] nonce):
    cdef uint32_t state[16]
    cdef uint8_t block[64]
    _chacha_init(state, &key[0], <uint32_t>counter, &nonce[0])
    _chacha_core(block, state, 10)
    return bytes(block[:64])


def chacha20_block_words(const uint8_t[::1] key, counter,
                         const uint8_t[::1] nonce, double_rounds):
    """Block words after a chosen number of double rounds (test hook)."""
    cdef uint32_t state[16]
    cdef uint8_t block[64]
    cdef int i
    _chacha_init(state, &key[0], <uint32_t>counter, &nonce[0])
    _chacha_core(block, state, <int>double_rounds)
    words = []
    for i in range(16):
        words.append(le32(block + 4 * i))
    return tuple(words)


def chacha20_xor(const uint8_t[::1] key, const uint8_t[::1] nonce,
                 initial_counter, const uint8_t[::1] data):
    cdef Py_ssize_t n = data.shape[0]
    out_obj = bytearray(n)
    cdef uint8_t[::1] out = out_obj
    cdef uint32_t state[16]
    cdef uint8_t block[64]
    cdef uint32_t counter = <uint32_t>initial_counter
    cdef Py_ssize_t off = 0, chunk, i
    _chacha_init(state, &key[0], counter, &nonce[0])
    while off < n:
        state[12] = counter
        _chacha_core(block, state, 10)
        counter += 1
        chunk = 64 if n - off >= 64 else n - off
        for i in range(chunk):
            out[off + i] = data[off + i] ^ block[i]
        off += 64
    return bytes(out_obj)


# --- poly1305 -------------------------------------------------------------------

def poly1305_tag(const uint8_t[::1] key, const uint8_t[::1] message):
    cdef Py_ssize_t mlen = message.shape[0]
    cdef const uint8_t *k = &key[0]
    cdef uint8_t r_clamped[16]
    cdef int i
    for i in range(16):
        r_clamped[i] = k[i]
    # clear the top 4 bits of bytes 3/7/11/15 and bottom 2 of 4/8/12
    r_clamped[3] &= 0x0F; r_clamped[7] &= 0x0F
    r_clamped[11] &= 0x0F; r_clamped[15] &= 0x0F
    r_clamped[4] &= 0xFC; r_clamped[8] &= 0xFC; r_clamped[12] &= 0xFC

    cdef uint32_t M26 = 0x3FFFFFF
    cdef uint32_t t0 = le32(r_clamped), t1 = le32(r_clamped + 4)
    cdef uint32_t t2 = le32(r_clamped + 8), t3 = le32(r_clamped + 12)
    cdef uint64_t r0 = t0 & M26
    cdef uint64_t r1 = ((t0 >> 26) | (t1 << 6)) & M26
    cdef uint64_t r2 = ((t1 >> 20) | (t2 << 12)) & M26
    cdef uint64_t r3 = ((t2 >> 14) | (t3 << 18)) & M26
    cdef uint64_t r4 = t3 >> 8
    cdef uint64_t s1 = r1 * 5, s2 = r2 * 5, s3 = r3 * 5, s4 = r4 * 5

    cdef uint64_t h0 = 0, h1 = 0, h2 = 0, h3 = 0, h4 = 0
    cdef uint64_t d0, d1, d2, d3, d4, c
    cdef uint8_t buf[16]
    cdef const uint8_t *m
    cdef Py_ssize_t off = 0, rem
    cdef uint32_t hibit
    while off < mlen:
        rem = mlen - off
        if rem >= 16:
            m = &message[off]
            hibit = 1 << 24
        else:
            for i in range(rem):
                buf[i] = message[off + i]
            buf[rem] = 1
            for i in range(rem + 1, 16):
                buf[i] = 0
            m = buf
            hibit = 0
        t0 = le32(m); t1 = le32(m + 4); t2 = le32(m + 8); t3 = le32(m + 12)
        h0 += t0 & M26
        h1 += ((t0 >> 26) | (t1 << 6)) & M26
        h2 += ((t1 >> 20) | (t2 << 12)) & M26
        h3 += ((t2 >> 14) | (t3 << 18)) & M26
        h4 += (t3 >> 8) | hibit

        d0 = h0 * r0 + h1 * s4 + h2 * s3 + h3 * s2 + h4 * s1
        d1 = h0 * r1 + h1 * r0 + h2 * s4 + h3 * s3 + h4 * s2
        d2 = h0 * r2 + h1 * r1 + h2 * r0 + h3 * s4 + h4 * s3
        d3 = h0 * r3 + h1 * r2 + h2 * r1 + h3 * r0 + h4 * s4
        d4 = h0 * r4 + h1 * r3 + h2 * r2 + h3 * r1 + h4 * r0

        c = d0 >> 26; h0 = d0 & M26
        d1 += c; c = d1 >> 26; h1 = d1 & M26
        d2 += c; c = d2 >> 26; h2 = d2 & M26
        d3 += c; c = d3 >> 26; h3 = d3 & M26
        d4 += c; c = d4 >> 26; h4 = d4 & M26
        h0 += c * 5; c = h0 >> 26; h0 &= M26
        h1 += c
        off += 16

    # final reduction mod 2^130 - 5
    c = h1 >> 26; h1 &= M26; h2 += c
    c = h2 >> 26; h2 &= M26; h3 += c
    c = h3 >> 26; h3 &= M26; h4 += c
    c = h4 >> 26; h4 &= M26; h0 += c * 5
    c = h0 >> 26; h0 &= M26; h1 += c

    cdef uint64_t g0, g1, g2, g3, g4, sel
    g0 = h0 + 5; c = g0 >> 26; g0 &= M26
    g1 = h1 + c; c = g1 >> 26; g1 &= M26
    g2 = h2 + c; c = g2 >> 26; g2 &= M26
    g3 = h3 + c; c = g3 >> 26; g3 &= M26
    g4 = h4 + c - (<uint64_t>1 << 26)
    sel = (g4 >> 63) - 1  # all-ones when h >= p, else zero
    h0 = (h0 & ~sel) | (g0 & sel)
    h1 = (h1 & ~sel) | (g1 & sel)
    h2 = (h2 & ~sel) | (g2 & sel)
    h3 = (h3 & ~sel) | (g3 & sel)
    h4 = (h4 & ~sel) | (g4 & sel)

    cdef uint64_t w0 = (h0 | (h1 << 26)) & 0xFFFFFFFF
    cdef uint64_t w1 = ((h1 >> 6) | (h2 << 20)) & 0xFFFFFFFF
    cdef uint64_t w2 = ((h2 >> 12) | (h3 << 14)) & 0xFFFFFFFF
    cdef uint64_t w3 = ((h3 >> 18) | (h4 << 8)) & 0xFFFFFFFF

    cdef uint64_t f
    cdef uint8_t tag[16]
    f = w0 + le32(k + 16); st32(tag, <uint32_t>f)
    f = w1 + le32(k + 20) + (f >> 32); st32(tag + 4, <uint32_t>f)
    f = w2 + le32(k + 24) + (f >> 32); st32(tag + 8, <uint32_t>f)
    f = w3 + le32(k + 28) + (f >> 32); st32(tag + 12, <uint32_t>f)
    return bytes(tag[:16])


# --- blake2s --------------------------------------------------------------------

cdef uint32_t B2S_IV[8]
B2S_IV[0] = 0x6A09E667; B2S_IV[1] = 0xBB67AE85
B2S_IV[2] = 0x3C6EF372; B2S_IV[3] = 0xA54FF53A
B2S_IV[4] = 0x510E527F; B2S_IV[5] = 0x9B05688C
B2S_IV[6] = 0x1F83D9AB; B2S_IV[7] = 0x5BE0CD19

cdef uint8_t B2S_SIGMA[10][16]
_sigma_rows = (
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
for _r in range(10):
    for _c in range(16):
        B2S_SIGMA[_r][_c] = _sigma_rows[_r][_c]

cdef inline uint32_t rotr32(uint32_t x, int n):
    return (x >> n) | (x << (32 - n))

cdef inline void _b2s_g(uint32_t *v, int a, int b, int c, int d,
                        uint32_t x, uint32_t y):
    v[a] = v[a] + v[b] + x
    v[d] = rotr32(v[d] ^ v[a], 16)
    v[c] = v[c] + v[d]
    v[b] = rotr32(v[b] ^ v[c], 12)
    v[a] = v[a] + v[b] + y
    v[d] = rotr32(v[d] ^ v[a], 8)
    v[c] = v[c] + v[d]
    v[b] = rotr32(v[b] ^ v[c], 7)

cdef void _b2s_compress(uint32_t *h, const uint8_t *block, uint64_t t, int last):
    cdef uint32_t m[16]
    cdef uint32_t v[16]
    cdef int i, rnd
    cdef const uint8_t *s
    for i in range(16):
        m[i] = le32(block + 4 * i)
    for i in range(8):
        v[i] = h[i]
        v[i + 8] = B2S_IV[i]
    v[12] ^= <uint32_t>t
    v[13] ^= <uint32_t>(t >> 32)
    if last:
        v[14] ^= 0xFFFFFFFF
    for rnd in range(10):
        s = B2S_SIGMA[rnd]
        _b2s_g(v, 0, 4, 8, 12, m[s[0]], m[s[1]])
        _b2s_g(v, 1, 5, 9, 13, m[s[2]], m[s[3]])
        _b2s_g(v, 2, 6, 10, 14, m[s[4]], m[s[5]])
        _b2s_g(v, 3, 7, 11, 15, m[s[6]], m[s[7]])
        _b2s_g(v, 0, 5, 10, 15, m[s[8]], m[s[9]])
        _b2s_g(v, 1, 6, 11, 12, m[s[10]], m[s[11]])
        _b2s_g(v, 2, 7, 8, 13, m[s[12]], m[s[13]])
        _b2s_g(v, 3, 4, 9, 14, m[s[14]], m[s[15]])
    for i in range(8):
        h[i] ^= v[i] ^ v[i + 8]


def blake2s_digest(const uint8_t[::1] data, const uint8_t[::1] key, digest_length):
    cdef int nn = <int>digest_length
    cdef int kk = <int>key.shape[0]
    cdef Py_ssize_t n = data.shape[0]
    cdef uint32_t h[8]
    cdef uint8_t block[64]
    cdef int i
    for i in range(8):
        h[i] = B2S_IV[i]
    h[0] ^= 0x01010000 ^ (<uint32_t>kk << 8) ^ <uint32_t>nn

    cdef uint64_t t = 0
    cdef Py_ssize_t off = 0, rem
    if kk > 0:
        for i in range(64):
            block[i] = key[i] if i < kk else 0
        if n > 0:
            t = 64
            _b2s_compress(h, block, t, 0)
        else:
            _b2s_compress(h, block, 64, 1)
            return _b2s_out(h, nn)
    while n - off > 64:
        t += 64
        _b2s_compress(h, &data[off], t, 0)
        off += 64
    rem = n - off
    for i in range(64):
        block[i] = data[off + i] if i < rem else 0
    t += <uint64_t>rem
    _b2s_compress(h, block, t, 1)
    return _b2s_out(h, nn)


cdef _b2s_out(uint32_t *h, int nn):
    cdef uint8_t out[32]
    cdef int i
    for i in range(8):
        st32(out + 4 * i, h[i])
    return bytes(out[:nn])


# --- x25519: GF(2^255 - 19) with 51-bit limbs ------------------------------------

cdef uint64_t MASK51 = 0x7FFFFFFFFFFFF


cdef void fe_frombytes(uint64_t *r, const uint8_t *s):
    r[0] = le64(s) & MASK51
    r[1] = (le64(s + 6) >> 3) & MASK51
    r[2] = (le64(s + 12) >> 6) & MASK51
    r[3] = (le64(s + 19) >> 1) & MASK51
    r[4] = (le64(s + 24) >> 12) & MASK51  # also drops bit 255


cdef void fe_tobytes(uint8_t *s, const uint64_t *f):
    cdef uint64_t h0 = f[0], h1 = f[1], h2 = f[2], h3 = f[3], h4 = f[4]
    cdef uint64_t c, q
    c = h0 >> 51; h0 &= MASK51; h1 += c
    c = h1 >> 51; h1 &= MASK51; h2 += c
    c = h2 >> 51; h2 &= MASK51; h3 += c
    c = h3 >> 51; h3 &= MASK51; h4 += c
    c = h4 >> 51; h4 &= MASK51; h0 += 19 * c
    c = h0 >> 51; h0 &= MASK51; h1 += c
    # q = 1 exactly when the value is >= p; then h + 19q mod 2^255 is canonical
    q = (h0 + 19) >> 51
    q = (h1 + q) >> 51
    q = (h2 + q) >> 51
    q = (h3 + q) >> 51
    q = (h4 + q) >> 51
    h0 += 19 * q
    c = h0 >> 51; h0 &= MASK51; h1 += c
    c = h1 >> 51; h1 &= MASK51; h2 += c
    c = h2 >> 51; h2 &= MASK51; h3 += c
    c = h3 >> 51; h3 &= MASK51; h4 += c
    h4 &= MASK51
    st64(s, h0 | (h1 << 51))
    st64(s + 8, (h1 >> 13) | (h2 << 38))
    st64(s + 16, (h2 >> 26) | (h3 << 25))
    st64(s + 24, (h3 >> 39) | (h4 << 12))


cdef inline void fe_add(uint64_t *r, const uint64_t *a, const uint64_t *b):
    r[0] = a[0] + b[0]
    r[1] = a[1] + b[1]
    r[2] = a[2] + b[2]
    r[3] = a[3] + b[3]
    r[4] = a[4] + b[4]


cdef inline void fe_sub(uint64_t *r, const uint64_t *a, const uint64_t *b):
    # a + 2p - b keeps limbs positive for inputs below 2^52
    r[0] = a[0] + 0xFFFFFFFFFFFDA - b[0]
    r[1] = a[1] + 0xFFFFFFFFFFFFE - b[1]
    r[2] = a[2] + 0xFFFFFFFFFFFFE - b[2]
    r[3] = a[3] + 0xFFFFFFFFFFFFE - b[3]
    r[4] = a[4] + 0xFFFFFFFFFFFFE - b[4]


cdef void fe_mul(uint64_t *r, const uint64_t *a, const uint64_t *b):
    cdef uint64_t a0 = a[0], a1 = a[1], a2 = a[2], a3 = a[3], a4 = a[4]
    cdef uint64_t b0 = b[0], b1 = b[1], b2 = b[2], b3 = b[3], b4 = b[4]
    cdef uint64_t b1_19 = b1 * 19, b2_19 = b2 * 19, b3_19 = b3 * 19, b4_19 = b4 * 19
    cdef u128 t0, t1, t2, t3, t4
    t0 = <u128>a0 * b0 + <u128>a1 * b4_19 + <u128>a2 * b3_19 + <u128>a3 * b2_19 + <u128>a4 * b1_19
    t1 = <u128>a0 * b1 + <u128>a1 * b0 + <u128>a2 * b4_19 + <u128>a3 * b3_19 + <u128>a4 * b2_19
    t2 = <u128>a0 * b2 + <u128>a1 * b1 + <u128>a2 * b0 + <u128>a3 * b4_19 + <u128>a4 * b3_19
    t3 = <u128>a0 * b3 + <u128>a1 * b2 + <u128>a2 * b1 + <u128>a3 * b0 + <u128>a4 * b4_19
    t4 = <u128>a0 * b4 + <u128>a1 * b3 + <u128>a2 * b2 + <u128>a3 * b1 + <u128>a4 * b0
    cdef uint64_t r0, r1, r2, r3, r4, carry
    t1 += <uint64_t>(t0 >> 51); r0 = <uint64_t>t0 & MASK51
    t2 += <uint64_t>(t1 >> 51); r1 = <uint64_t>t1 & MASK51
    t3 += <uint64_t>(t2 >> 51); r2 = <uint64_t>t2 & MASK51
    t4 += <uint64_t>(t3 >> 51); r3 = <uint64_t>t3 & MASK51
    carry = <uint64_t>(t4 >> 51); r4 = <uint64_t>t4 & MASK51
    r0 += carry * 19
    r1 += r0 >> 51; r0 &= MASK51
    r[0] = r0; r[1] = r1; r[2] = r2; r[3] = r3; r[4] = r4


cdef inline void fe_sq(uint64_t *r, const uint64_t *a):
    fe_mul(r, a, a)


cdef void fe_mul_small(uint64_t *r, const uint64_t *a, uint64_t k):
    cdef u128 t0 = <u128>a[0] * k
    cdef u128 t1 = <u128>a[1] * k
    cdef u128 t2 = <u128>a[2] * k
    cdef u128 t3 = <u128>a[3] * k
    cdef u128 t4 = <u128>a[4] * k
    cdef uint64_t r0, r1, r2, r3, r4, carry
    t1 += <uint64_t>(t0 >> 51); r0 = <uint64_t>t0 & MASK51
    t2 += <uint64_t>(t1 >> 51); r1 = <uint64_t>t1 & MASK51
    t3 += <uint64_t>(t2 >> 51); r2 = <uint64_t>t2 & MASK51
    t4 += <uint64_t>(t3 >> 51); r3 = <uint64_t>t3 & MASK51
    carry = <uint64_t>(t4 >> 51); r4 = <uint64_t>t4 & MASK51
    r0 += carry * 19
    r1 += r0 >> 51; r0 &= MASK51
    r[0] = r0; r[1] = r1; r[2] = r2; r[3] = r3; r[4] = r4


cdef void fe_cswap(uint64_t *a, uint64_t *b, uint64_t swap):
    cdef uint64_t mask = 0 - swap
    cdef uint64_t x
    cdef int i
    for i in range(5):
        x = (a[i] ^ b[i]) & mask
        a[i] ^= x
        b[i] ^= x


cdef void fe_invert(uint64_t *out, const uint64_t *z):
    cdef uint64_t t0[5]
    cdef uint64_t t1[5]
    cdef uint64_t t2[5]
    cdef uint64_t t3[5]
    cdef int i
    fe_sq(t0, z)                      # z^2
    fe_sq(t1, t0); fe_sq(t1, t1)      # z^8
    fe_mul(t1, z, t1)                 # z^9
    fe_mul(t0, t0, t1)                # z^11
    fe_sq(t2, t0)                     # z^22
    fe_mul(t1, t1, t2)                # z^31 = z^(2^5 - 1)
    fe_sq(t2, t1)
    for i in range(4):
        fe_sq(t2, t2)
    fe_mul(t1, t2, t1)                # z^(2^10 - 1)
    fe_sq(t2, t1)
    for i in range(9):
        fe_sq(t2, t2)
    fe_mul(t2, t2, t1)                # z^(2^20 - 1)
    fe_sq(t3, t2)
    for i in range(19):
        fe_sq(t3, t3)
    fe_mul(t2, t3, t2)                # z^(2^40 - 1)
    fe_sq(t2, t2)
    for i in range(9):
        fe_sq(t2, t2)
    fe_mul(t1, t2, t1)                # z^(2^50 - 1)
    fe_sq(t2, t1)
    for i in range(49):
        fe_sq(t2, t2)
    fe_mul(t2, t2, t1)                # z^(2^100 - 1)
    fe_sq(t3, t2)
    for i in range(99):
        fe_sq(t3, t3)
    fe_mul(t2, t3, t2)                # z^(2^200 - 1)
    fe_sq(t2, t2)
    for i in range(49):
        fe_sq(t2, t2)
    fe_mul(t1, t2, t1)                # z^(2^250 - 1)
    fe_sq(t1, t1)
    for i in range(4):
        fe_sq(t1, t1)
    fe_mul(out, t1, t0)               # z^(2^255 - 21) = z^(p - 2)


def x25519_scalarmult(const uint8_t[::1] scalar, const uint8_t[::1] u):
    cdef uint8_t e[32]
    cdef int i
    for i in range(32):
        e[i] = scalar[i]
    e[0] &= 248
    e[31] &= 127
    e[31] |= 64

    cdef uint64_t x1[5]
    cdef uint64_t x2[5]
    cdef uint64_t z2[5]
    cdef uint64_t x3[5]
    cdef uint64_t z3[5]
    cdef uint64_t A[5]
    cdef uint64_t AA[5]
    cdef uint64_t B[5]
    cdef uint64_t BB[5]
    cdef uint64_t E[5]
    cdef uint64_t C[5]
    cdef uint64_t D[5]
    cdef uint64_t DA[5]
    cdef uint64_t CB[5]
    cdef uint64_t T[5]
    fe_frombytes(x1, &u[0])
    x2[0] = 1; x2[1] = 0; x2[2] = 0; x2[3] = 0; x2[4] = 0
    z2[0] = 0; z2[1] = 0; z2[2] = 0; z2[3] = 0; z2[4] = 0
    memcpy(x3, x1, sizeof(x1))
    z3[0] = 1; z3[1] = 0; z3[2] = 0; z3[3] = 0; z3[4] = 0

    cdef uint64_t swap = 0, kt
    cdef int pos
    for pos in range(254, -1, -1):
        kt = (e[pos >> 3] >> (pos & 7)) & 1
        swap ^= kt
        fe_cswap(x2, x3, swap)
        fe_cswap(z2, z3, swap)
        swap = kt
        fe_add(A, x2, z2)
        fe_sq(AA, A)
        fe_sub(B, x2, z2)
        fe_sq(BB, B)
        fe_sub(E, AA, BB)
        fe_add(C, x3, z3)
        fe_sub(D, x3, z3)
        fe_mul(DA, D, A)
        fe_mul(CB, C, B)
        fe_add(T, DA, CB)
        fe_sq(x3, T)
        fe_sub(T, DA, CB)
        fe_sq(T, T)
        fe_mul(z3, x1, T)
        fe_mul(x2, AA, BB)
        fe_mul_small(T, E, 121665)
        fe_add(T, AA, T)
        fe_mul(z2, E, T)
    fe_cswap(x2, x3, swap)
    fe_cswap(z2, z3, swap)

    fe_invert(z2, z2)
    fe_mul(x2, x2, z2)
    cdef uint8_t out[32]
    fe_tobytes(out, x2)
    return bytes(out[:32])
