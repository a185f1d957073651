"""Grayscale image files: binary PGM (P5) and 8-bit grayscale PNG.

PGM is the golden-test format: the byte layout is fixed ("P5\\n<w> <h>\\n255\\n"
followed by raw rows), so identical images produce identical files. The PNG
path is self-contained on top of zlib: written files use filter type 0 on
every scanline; the reader handles any standard filter so externally
produced 8-bit grayscale PNGs load too.
"""

import struct
import zlib

import numpy as np

from .textures import GrayImage

_PNG_SIG = b"\x89PNG\r\n\x1a\n"


def write_pgm(image: GrayImage, path) -> None:
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        f.write(image.pixels.tobytes())


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as f:
        data = f.read()
    tokens: list[bytes] = []
    pos = 0
    # Header tokens separated by whitespace; '#' starts a comment.
    while len(tokens) < 4 and pos < len(data):
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos] == ord("#"):
            while pos < len(data) and data[pos] != ord("\n"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    if len(tokens) != 4 or tokens[0] != b"P5":
        raise ValueError("not a binary PGM (P5) file")
    width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    if maxval != 255:
        raise ValueError("only maxval 255 PGM files are supported")
    pos += 1  # single whitespace byte after maxval
    raster = data[pos : pos + width * height]
    if len(raster) != width * height:
        raise ValueError("PGM raster truncated")
    return GrayImage(np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy())


def _chunk(tag: bytes, payload: bytes) -> bytes:
    crc = zlib.crc32(tag + payload) & 0xFFFFFFFF
    return struct.pack(">I", len(payload)) + tag + payload + struct.pack(">I", crc)


def write_png(image: GrayImage, path) -> None:
    ihdr = struct.pack(">IIBBBBB", image.width, image.height, 8, 0, 0, 0, 0)
    rows = image.pixels
    raw = b"".join(b"\x00" + rows[j].tobytes() for j in range(image.height))
    payload = zlib.compress(raw, 6)
    with open(path, "wb") as f:
        f.write(_PNG_SIG)
        f.write(_chunk(b"IHDR", ihdr))
        f.write(_chunk(b"IDAT", payload))
        f.write(_chunk(b"IEND", b""))


def _paeth(a: int, b: int, c: int) -> int:
    p = a + b - c
    pa = abs(p - a)
    pb = abs(p - b)
    pc = abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def read_png(path) -> GrayImage:
    with open(path, "rb") as f:
        data = f.read()
    if data[:8] != _PNG_SIG:
        raise ValueError("not a PNG file")
    pos = 8
    width = height = None
    idat = b""
    while pos + 8 <= len(data):
        (length,) = struct.unpack(">I", data[pos : pos + 4])
        tag = data[pos + 4 : pos + 8]
        payload = data[pos + 8 : pos + 8 + length]
        pos += 12 + length
        if tag == b"IHDR":
            width, height, depth, color, comp, filt, interlace = struct.unpack(
                ">IIBBBBB", payload
            )
            if depth != 8 or color != 0 or comp != 0 or filt != 0 or interlace != 0:
                raise ValueError("only 8-bit non-interlaced grayscale PNG is supported")
        elif tag == b"IDAT":
            idat += payload
        elif tag == b"IEND":
            break
    if width is None:
        raise ValueError("PNG missing IHDR")
    raw = zlib.decompress(idat)
    if len(raw) != height * (width + 1):
        raise ValueError("PNG scanline data has unexpected size")
    out = np.zeros((height, width), dtype=np.uint8)
    prev = bytearray(width)
    for j in range(height):
        ftype = raw[j * (width + 1)]
        line = bytearray(raw[j * (width + 1) + 1 : (j + 1) * (width + 1)])
        if ftype == 1:  # sub
            for i in range(1, width):
                line[i] = (line[i] + line[i - 1]) & 0xFF
        elif ftype == 2:  # up
            for i in range(width):
                line[i] = (line[i] + prev[i]) & 0xFF
        elif ftype == 3:  # average
            for i in range(width):
                left = line[i - 1] if i else 0
                line[i] = (line[i] + ((left + prev[i]) >> 1)) & 0xFF
        elif ftype == 4:  # paeth
            for i in range(width):
                left = line[i - 1] if i else 0
                ul = prev[i - 1] if i else 0
                line[i] = (line[i] + _paeth(left, prev[i], ul)) & 0xFF
        elif ftype != 0:
            raise ValueError(f"unsupported PNG filter type {ftype}")
        out[j] = np.frombuffer(bytes(line), dtype=np.uint8)
        prev = line
    return GrayImage(out)
