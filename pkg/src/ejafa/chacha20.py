"""ChaCha20 stream cipher in the RFC 7539 layout.

State is sixteen 32-bit words: four "expand 32-byte k" constants, eight key
words, one block counter, three nonce words.  The block function runs 10
double rounds (20 rounds): columns QR(0,4,8,12).. then diagonals
QR(0,5,10,15)..  The 32-bit counter caps a single (key, nonce) stream at
2^32 blocks (~256 GiB); exceeding it is an error, never a wraparound.
"""

import struct

from ._backend import kernels
from .errors import InvalidIndex, InvalidLength, MessageTooLong

KEY_SIZE = 32
NONCE_SIZE = 12
BLOCK_SIZE = 64
DOUBLE_ROUNDS = 10
MAX_COUNTER = 2**32 - 1

CONSTANT_WORDS = struct.unpack("<4I", b"expand 32-byte k")

_M = 0xFFFFFFFF


def quarter_round(state, a, b, c, d):
    """Apply one quarter-round to words a, b, c, d of a 16-word state.

    Returns the new state as a tuple; the other twelve words are untouched.
    """
    indices = (a, b, c, d)
    if len(set(indices)) != 4 or not all(0 <= i < 16 for i in indices):
        raise InvalidIndex(f"quarter-round indices must be 4 distinct words in 0..15: {indices}")
    words = list(state)
    wa, wb, wc, wd = words[a], words[b], words[c], words[d]
    wa = (wa + wb) & _M; wd ^= wa; wd = ((wd << 16) | (wd >> 16)) & _M
    wc = (wc + wd) & _M; wb ^= wc; wb = ((wb << 12) | (wb >> 20)) & _M
    wa = (wa + wb) & _M; wd ^= wa; wd = ((wd << 8) | (wd >> 24)) & _M
    wc = (wc + wd) & _M; wb ^= wc; wb = ((wb << 7) | (wb >> 25)) & _M
    words[a], words[b], words[c], words[d] = wa, wb, wc, wd
    return tuple(words)


def initial_state(key, counter, nonce):
    """The 16 initial state words for (key, counter, nonce)."""
    _check_key_nonce(key, nonce)
    _check_counter(counter)
    return (CONSTANT_WORDS
            + struct.unpack("<8I", key)
            + (counter,)
            + struct.unpack("<3I", nonce))


def chacha20_block(key, counter, nonce):
    """One 64-byte keystream block."""
    _check_key_nonce(key, nonce)
    _check_counter(counter)
    return kernels.chacha20_block(bytes(key), counter, bytes(nonce))


def block_state_after(key, counter, nonce, double_rounds):
    """State words after `double_rounds` double rounds plus the feed-forward
    add (test hook for checking intermediate rounds against a reference)."""
    _check_key_nonce(key, nonce)
    _check_counter(counter)
    if not 0 <= double_rounds <= DOUBLE_ROUNDS:
        raise InvalidIndex(f"double_rounds must be in 0..{DOUBLE_ROUNDS}")
    return kernels.chacha20_block_words(bytes(key), counter, bytes(nonce), double_rounds)


def chacha20_xor(key, nonce, initial_counter, data):
    """XOR data with the keystream starting at block `initial_counter`.

    An involution: applying it twice with the same arguments returns `data`.
    """
    _check_key_nonce(key, nonce)
    _check_counter(initial_counter)
    blocks_needed = (len(data) + BLOCK_SIZE - 1) // BLOCK_SIZE
    if blocks_needed > 2**32 - initial_counter:
        raise MessageTooLong(
            f"{len(data)} bytes need {blocks_needed} blocks but only "
            f"{2**32 - initial_counter} remain before counter exhaustion")
    return kernels.chacha20_xor(bytes(key), bytes(nonce), initial_counter, bytes(data))


def _check_key_nonce(key, nonce):
    if len(key) != KEY_SIZE:
        raise InvalidLength(f"key must be {KEY_SIZE} bytes, got {len(key)}")
    if len(nonce) != NONCE_SIZE:
        raise InvalidLength(f"nonce must be {NONCE_SIZE} bytes, got {len(nonce)}")


def _check_counter(counter):
    if not 0 <= counter <= MAX_COUNTER:
        raise MessageTooLong(f"block counter {counter} outside 32-bit range")
