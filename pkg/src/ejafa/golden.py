"""Frozen interop vectors.

Every value here was generated once from independent reference
implementations and is bit-exact for any conforming implementation of the
wire format.  The same values live in vectors/ as hex files for
cross-language use; tests keep the two in sync.  Do not regenerate from
this package's own primitives.
"""

# RFC 7748 X25519 base-point vectors.
X25519_ALICE_PRIV = bytes.fromhex(
    "77076d0a7318a57d3c16c17251b26645df4c2f87ebc0992ab177fba51db92c2a")
X25519_ALICE_PUB = bytes.fromhex(
    "8520f0098930a754748b7ddcb43ef75a0dbf3a0d26381af4eba4a98eaa9b4e6a")
X25519_BOB_PRIV = bytes.fromhex(
    "5dab087e624a8a4b79e17f8b83800ee66f3bb1292618b6fd1c2f8b27ff88e0eb")
X25519_BOB_PUB = bytes.fromhex(
    "de9edb7d7b7dc1b4d35b61c2ece435373f8343c85b78674dadfc7e146f882b4f")
X25519_SHARED = bytes.fromhex(
    "4a5d9d5ba4ce2de1728e3bf480350f25e07e21c947d19e3376f09b3c1e161742")

# First keystream block for the all-zero key, nonce, and counter.
CHACHA20_ZERO_BLOCK = bytes.fromhex(
    "76b8e0ada0f13d90405d6ae55386bd28bdd219b8a08ded1aa836efcc8b770dc7"
    "da41597c5157488d7724e03fb8d84a376a43b8f41518a11cc387b669b2ee6586")

# RFC 8439 keyed-hash vector.
POLY1305_KEY = bytes.fromhex(
    "85d6be7857556d337f4452fe42d506a80103808afb0db2fd4abff6af4149f51b")
POLY1305_MESSAGE = b"Cryptographic Forum Research Group"
POLY1305_TAG = bytes.fromhex("a8061dc1305136c6c22b8baf0c0127a9")

# RFC 7693 digests.
BLAKE2S_EMPTY = bytes.fromhex(
    "69217a3079908094e11121d042354a7c1f55b6482ca1a51e1b250dfd1ed0eef9")
BLAKE2S_ABC = bytes.fromhex(
    "508c5e8c327c14e2e1a72ba34eeb452f37458b209ed63a294d999b4c86675982")

# HKDF two-block expansion: prk = extract(zero salt, X25519_SHARED),
# info = b"expand-check", length 33.
HKDF_PRK = bytes.fromhex(
    "6e17c14081663cef3e0cf5068a60f754dc4fd50e84ef3af495d66b34a600b72b")
HKDF_EXPAND_INFO = b"expand-check"
HKDF_EXPAND_33 = bytes.fromhex(
    "147d8824de34a5600c8b99ec1431b31115d739db97f6b5b71c8cc20daec79fa4a2")

# Session key derived from the RFC 7748 vector keys.
SESSION_KEY = bytes.fromhex(
    "f83e195e3447145cdd58fa10af32ed267e1fb899665e88c71071c789bdf5ae5b")

# One full encrypted message under SESSION_KEY with a fixed nonce.
SESSION_NONCE = bytes.fromhex("000102030405060708090a0b")
SESSION_PLAINTEXT = (b"ejafa/v1 interop: encrypt-then-mac over "
                     b"nonce||ciphertext, keystream from block one.")
SESSION_ENCRYPTED = bytes.fromhex(
    "000102030405060708090a0b"
    "2e9b7781943ce1a9fc845a13cd64115716cc3b480b17cc10520950d728fa0d6d"
    "7085c85fcbada6c9889c8e1eaba6f66922909e81fa8d904cbe7fa001d5e777ad"
    "c5cd05ddcd00483bb51eadf9fd655092a0fdf7cd"
    "6abb30076b8a7fef388ef1c9385dfd14")

# Tag the RFC 8439 AEAD construction (zero-length AAD) would produce for the
# same one-time key, nonce, and ciphertext.  Kept to pin that this protocol's
# MAC input is plain nonce||ciphertext, with no padding or length words.
SESSION_AEAD_STYLE_TAG = bytes.fromhex("3784b7d3af6e09ff276817af926d2061")
