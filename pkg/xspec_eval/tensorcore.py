"""
Dense tensor substrate: distances, spatial padding and a direct 2-D convolution.

conv2d is a correctness oracle for shape inference and receptive-field probing,
not a performance path.
"""

from pathlib import Path
from typing import Literal, Union

import numpy as np
from loguru import logger

from xspec_eval.errors import ArgumentError, ParseError, ShapeError
from xspec_eval.schema.tensor import Tensor

PadMode = Literal["reflect", "zero"]

TENSOR_MAGIC = b"TNSR"


def _require_same_dims(a: Tensor, b: Tensor) -> None:
    if a.dims != b.dims:
        raise ShapeError(f"dimension mismatch: {a.dims} vs {b.dims}")


def l1_mean(a: Tensor, b: Tensor) -> float:
    """Mean absolute difference over all elements"""
    _require_same_dims(a, b)
    return float(np.mean(np.abs(a.data - b.data)))


def euclidean(a: Tensor, b: Tensor) -> float:
    _require_same_dims(a, b)
    return float(np.sqrt(np.sum((a.data - b.data) ** 2)))


def pad2d(x: Tensor, amount: int, mode: PadMode) -> Tensor:
    """Extend the spatial border of a C x H x W tensor.

    reflect mirrors without repeating the edge element; zero fills with 0.
    """
    if x.ndim != 3:
        raise ShapeError(f"pad2d expects C x H x W, got dims {x.dims}")
    if amount < 0:
        raise ArgumentError(f"padding must be non-negative, got {amount}")
    if amount == 0:
        return x
    _, height, width = x.dims
    if mode == "reflect":
        if amount >= height or amount >= width:
            raise ArgumentError(
                f"reflect padding {amount} too large for extent {height} x {width}"
            )
        padded = np.pad(x.array, ((0, 0), (amount, amount), (amount, amount)), mode="reflect")
    elif mode == "zero":
        padded = np.pad(
            x.array, ((0, 0), (amount, amount), (amount, amount)), mode="constant"
        )
    else:
        raise ArgumentError(f"unknown pad mode {mode!r}")
    return Tensor.from_array(padded)


def conv_output_extent(extent: int, kernel: int, stride: int, padding: int) -> int:
    """floor((n + 2p - k) / s) + 1"""
    return (extent + 2 * padding - kernel) // stride + 1


def conv2d(
    x: Tensor,
    weights: Tensor,
    stride: int = 1,
    padding: int = 0,
    pad_mode: PadMode = "zero",
) -> Tensor:
    """Direct cross-correlation of Cin x H x W input with Cout x Cin x k x k weights"""
    if x.ndim != 3 or weights.ndim != 4:
        raise ShapeError(
            f"conv2d expects input C x H x W and weights Cout x Cin x k x k, "
            f"got {x.dims} and {weights.dims}"
        )
    c_in, height, width = x.dims
    c_out, w_in, k_h, k_w = weights.dims
    if w_in != c_in:
        raise ShapeError(f"input has {c_in} channels, weights expect {w_in}")
    if stride < 1:
        raise ShapeError(f"stride must be >= 1, got {stride}")
    if padding < 0:
        raise ShapeError(f"padding must be >= 0, got {padding}")
    if k_h > height + 2 * padding or k_w > width + 2 * padding:
        raise ShapeError(
            f"kernel {k_h} x {k_w} exceeds padded input "
            f"{height + 2 * padding} x {width + 2 * padding}"
        )
    if pad_mode == "reflect" and padding > 0 and (padding >= height or padding >= width):
        raise ShapeError(f"reflect padding {padding} too large for extent {height} x {width}")

    padded = pad2d(x, padding, pad_mode).array
    kernel = weights.array
    out_h = conv_output_extent(height, k_h, stride, padding)
    out_w = conv_output_extent(width, k_w, stride, padding)

    out = np.zeros((c_out, out_h, out_w), dtype=np.float64)
    for row in range(out_h):
        top = row * stride
        for col in range(out_w):
            left = col * stride
            window = padded[:, top : top + k_h, left : left + k_w]
            out[:, row, col] = np.tensordot(kernel, window, axes=([1, 2, 3], [0, 1, 2]))

    logger.debug(f"conv2d {x.dims} * {weights.dims} s={stride} p={padding} -> {out.shape}")
    return Tensor.from_array(out)


def read_tensor(path: Union[str, Path]) -> Tensor:
    """Read a TNSR file: magic, u32 ndim, u32 extents, f64 row-major values (little-endian)"""
    path = Path(path)
    raw = path.read_bytes()
    if raw[:4] != TENSOR_MAGIC:
        raise ParseError(f"{path}: missing TNSR magic")
    if len(raw) < 8:
        raise ParseError(f"{path}: truncated header")
    ndim = int(np.frombuffer(raw, dtype="<u4", count=1, offset=4)[0])
    header_end = 8 + 4 * ndim
    if ndim < 1 or len(raw) < header_end:
        raise ParseError(f"{path}: truncated or empty extent list (ndim={ndim})")
    dims = tuple(int(d) for d in np.frombuffer(raw, dtype="<u4", count=ndim, offset=8))
    count = int(np.prod(dims))
    if len(raw) != header_end + 8 * count:
        raise ParseError(
            f"{path}: expected {count} float64 values for extents {dims}, "
            f"found {(len(raw) - header_end) / 8:g}"
        )
    values = np.frombuffer(raw, dtype="<f8", count=count, offset=header_end)
    try:
        return Tensor.from_flat(dims, values)
    except ShapeError as e:
        raise ParseError(f"{path}: {e.message}")


def write_tensor(t: Tensor, path: Union[str, Path]) -> Path:
    path = Path(path)
    header = TENSOR_MAGIC + np.array([t.ndim, *t.dims], dtype="<u4").tobytes()
    path.write_bytes(header + t.data.astype("<f8").tobytes())
    return path
