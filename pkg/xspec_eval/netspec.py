"""
Declarative generator and discriminator layer tables.

Shape inference, parameter counting and the analytic receptive field work on
the table alone; the empirical receptive field runs a convolution-only forward
pass through tensorcore and checks which input pixels reach one output unit.
"""

import json
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from xspec_eval.errors import ArgumentError, ParseError, ShapeError, UnsupportedLayerError
from xspec_eval.schema.netspec import LayerShape, LayerSpec, NetworkSpec
from xspec_eval.schema.tensor import Tensor
from xspec_eval.tensorcore import conv2d, conv_output_extent

BUILTIN_NETWORKS = ("generator", "discriminator")


def _generator() -> NetworkSpec:
    layers = [
        LayerSpec(kind="conv", kernel=7, padding=3, pad_mode="reflect", in_ch=1, out_ch=64, norm="instance"),
        LayerSpec(kind="conv", kernel=3, stride=2, padding=1, in_ch=64, out_ch=128, norm="instance"),
        LayerSpec(kind="conv", kernel=3, stride=2, padding=1, in_ch=128, out_ch=256, norm="instance"),
    ]
    layers += [
        LayerSpec(kind="residual_block", kernel=3, padding=1, in_ch=256, out_ch=256, norm="instance")
        for _ in range(9)
    ]
    layers += [
        LayerSpec(kind="transposed_conv", kernel=3, stride=2, padding=1, in_ch=256, out_ch=128, norm="instance"),
        LayerSpec(kind="transposed_conv", kernel=3, stride=2, padding=1, in_ch=128, out_ch=64, norm="instance"),
        # Final layer keeps ReLU and instance norm, no tanh.
        LayerSpec(kind="conv", kernel=7, padding=3, pad_mode="reflect", in_ch=64, out_ch=1, norm="instance"),
    ]
    return NetworkSpec(name="generator", input_channels=1, layers=layers)


def _discriminator() -> NetworkSpec:
    channels = [1, 64, 128, 256, 512, 1]
    strides = [2, 2, 2, 1, 1]
    layers = []
    for index, stride in enumerate(strides):
        last = index == len(strides) - 1
        layers.append(
            LayerSpec(
                kind="conv",
                kernel=4,
                stride=stride,
                padding=1,
                in_ch=channels[index],
                out_ch=channels[index + 1],
                activation="none" if last else "leaky_relu",
                negative_slope=0.2,
                norm="none" if index == 0 or last else "instance",
            )
        )
    return NetworkSpec(name="discriminator", input_channels=1, layers=layers)


def builtin(name: str) -> NetworkSpec:
    if name == "generator":
        return _generator()
    if name == "discriminator":
        return _discriminator()
    raise ArgumentError(f"unknown builtin network {name!r}, expected one of {BUILTIN_NETWORKS}")


def load_network(path: Union[str, Path]) -> NetworkSpec:
    """Read a NetworkSpec JSON document"""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg}", line=e.lineno)
    return NetworkSpec.model_validate(payload)


def resolve_network(name_or_path: str) -> NetworkSpec:
    """Builtin name, or a path to a NetworkSpec JSON file"""
    if name_or_path in BUILTIN_NETWORKS:
        return builtin(name_or_path)
    return load_network(name_or_path)


def _conv_extent(layer_no: int, extent: int, layer: LayerSpec) -> int:
    if layer.pad_mode == "reflect" and layer.padding >= extent:
        raise ShapeError(
            f"layer {layer_no}: reflect padding {layer.padding} needs extent > {layer.padding}, "
            f"got {extent}"
        )
    out = conv_output_extent(extent, layer.kernel, layer.stride, layer.padding)
    if out < 1:
        raise ShapeError(
            f"layer {layer_no}: kernel {layer.kernel} stride {layer.stride} padding "
            f"{layer.padding} leaves no output from extent {extent}"
        )
    return out


def _layer_extent(layer_no: int, extent: int, layer: LayerSpec) -> int:
    if layer.kind == "conv":
        return _conv_extent(layer_no, extent, layer)
    if layer.kind == "transposed_conv":
        # output_padding is fixed to stride - 1 so stride 2 exactly doubles.
        out = (extent - 1) * layer.stride - 2 * layer.padding + layer.kernel + (layer.stride - 1)
        if out < 1:
            raise ShapeError(f"layer {layer_no}: transposed convolution leaves no output from extent {extent}")
        return out
    inner = _conv_extent(layer_no, _conv_extent(layer_no, extent, layer), layer)
    if inner != extent:
        raise ShapeError(
            f"layer {layer_no}: residual block changes extent {extent} -> {inner}, skip cannot be added"
        )
    return inner


def infer_shapes(net: NetworkSpec, input_shape: Sequence[int]) -> List[LayerShape]:
    """Per-layer (channels, H, W) for an input of shape (channels, H, W)"""
    if len(input_shape) != 3:
        raise ShapeError(f"input shape must be (channels, H, W), got {tuple(input_shape)}")
    channels, height, width = (int(v) for v in input_shape)
    if channels != net.input_channels:
        raise ShapeError(f"{net.name} expects {net.input_channels} input channels, got {channels}")
    if height < 1 or width < 1:
        raise ShapeError(f"input extents must be positive, got {height} x {width}")

    shapes = []
    for layer_no, layer in enumerate(net.layers, start=1):
        height = _layer_extent(layer_no, height, layer)
        width = _layer_extent(layer_no, width, layer)
        shapes.append(
            LayerShape(layer=layer_no, kind=layer.kind, channels=layer.out_ch, height=height, width=width)
        )
    return shapes


def layer_param_count(layer: LayerSpec) -> int:
    """Weights plus bias per convolution, plus 2 affine parameters per normalized channel"""
    per_conv = layer.kernel * layer.kernel * layer.in_ch * layer.out_ch + layer.out_ch
    norm = 2 * layer.out_ch if layer.norm == "instance" else 0
    convs = 2 if layer.kind == "residual_block" else 1
    return convs * (per_conv + norm)


def param_count(net: NetworkSpec) -> int:
    return sum(layer_param_count(layer) for layer in net.layers)


def _reject_transposed(net: NetworkSpec) -> None:
    for layer_no, layer in enumerate(net.layers, start=1):
        if layer.kind == "transposed_conv":
            raise UnsupportedLayerError(
                f"layer {layer_no}: receptive field is undefined for transposed convolutions"
            )


def receptive_field(net: NetworkSpec) -> int:
    """r <- r + (k - 1) * j, j <- j * s over layers in forward order"""
    _reject_transposed(net)
    r, j = 1, 1
    for layer in net.layers:
        convs = 2 if layer.kind == "residual_block" else 1
        for _ in range(convs):
            r += (layer.kernel - 1) * j
            j *= layer.stride
    return r


class _ConvProbe:
    """Linear, bias-free replica of a network used to trace pixel influence"""

    def __init__(self, net: NetworkSpec, seed: int, max_channels: int):
        rng = np.random.default_rng(seed)
        self.net = net
        self.input_channels = min(net.input_channels, max_channels)
        self.weights: List[List[Tensor]] = []
        channels = self.input_channels
        for layer in net.layers:
            out_channels = min(layer.out_ch, max_channels)
            convs = 2 if layer.kind == "residual_block" else 1
            stage = []
            for _ in range(convs):
                # Strictly positive weights: contributions can never cancel.
                shape = (out_channels, channels, layer.kernel, layer.kernel)
                stage.append(Tensor.from_array(rng.uniform(0.1, 1.0, size=shape)))
                channels = out_channels
            self.weights.append(stage)

    def forward(self, x: Tensor) -> np.ndarray:
        for layer, stage in zip(self.net.layers, self.weights):
            y = x
            for w in stage:
                y = conv2d(y, w, stride=layer.stride, padding=layer.padding, pad_mode=layer.pad_mode)
            if layer.kind == "residual_block":
                y = Tensor.from_array(y.array + x.array)
            x = y
        return x.array.sum(axis=0)

    def response(self, size: int, row: int, col: int) -> np.ndarray:
        image = np.zeros((self.input_channels, size, size))
        image[:, row, col] = 1.0
        return self.forward(Tensor.from_array(image))


def _nearest_to_center(mask: np.ndarray) -> Tuple[int, int]:
    rows, cols = np.nonzero(mask)
    center_r, center_c = mask.shape[0] // 2, mask.shape[1] // 2
    k = int(np.argmin((rows - center_r) ** 2 + (cols - center_c) ** 2))
    return int(rows[k]), int(cols[k])


def _outward_from_center(size: int) -> Iterator[Tuple[int, int]]:
    center = size // 2
    yield center, center
    for offset in range(1, size - center):
        yield center, center + offset
        yield center + offset, center
        yield center + offset, center + offset


def empirical_receptive_field(
    net: NetworkSpec, seed: int, input_size: int, max_channels: Optional[int] = 8
) -> int:
    """Span of the central input row whose pixels reach one output unit near the center"""
    analytic = receptive_field(net)
    if input_size <= analytic:
        raise ArgumentError(
            f"input_size {input_size} must exceed the analytic receptive field {analytic}"
        )
    if max_channels is not None and max_channels < 1:
        raise ArgumentError(f"max_channels must be positive, got {max_channels}")
    infer_shapes(net, (net.input_channels, input_size, input_size))

    cap = max_channels if max_channels is not None else max(
        [net.input_channels] + [layer.out_ch for layer in net.layers]
    )
    probe = _ConvProbe(net, seed, cap)

    # The baseline input is all zeros, so with zero bias every nonzero output is
    # reached by the perturbed pixel. Strided layers may skip the exact center,
    # so walk outward until some pixel reaches an output unit.
    unit = None
    for row, col in _outward_from_center(input_size):
        reached = probe.response(input_size, row, col) > 0
        if reached.any():
            unit = _nearest_to_center(reached)
            break
    if unit is None:
        raise ArgumentError(f"no input pixel of {net.name} reaches any output unit")

    reaching = [
        col for col in range(input_size) if probe.response(input_size, row, col)[unit] > 0
    ]
    diameter = max(reaching) - min(reaching) + 1
    logger.debug(
        f"empirical receptive field of {net.name}: unit {unit}, input row {row}, "
        f"columns {min(reaching)}..{max(reaching)} -> {diameter} (analytic {analytic})"
    )
    return diameter


def describe(net: NetworkSpec, input_shape: Sequence[int]) -> List[dict]:
    """Per-layer rows for reports: shape, parameters and layer settings"""
    shapes = infer_shapes(net, input_shape)
    return [
        {
            "layer": shape.layer,
            "kind": layer.kind,
            "kernel": layer.kernel,
            "stride": layer.stride,
            "padding": layer.padding,
            "pad_mode": layer.pad_mode,
            "in_ch": layer.in_ch,
            "out_ch": layer.out_ch,
            "activation": layer.activation,
            "norm": layer.norm,
            "output_shape": list(shape.shape),
            "params": layer_param_count(layer),
        }
        for layer, shape in zip(net.layers, shapes)
    ]
