from typing import List, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

LayerKind = Literal["conv", "transposed_conv", "residual_block"]


class LayerSpec(BaseModel):
    """One row of a network table.

    For transposed_conv, stride 2 encodes the "1/2" upsampling step size.
    A residual_block is two kernel x kernel stride-1 convolutions with an identity skip.
    """

    kind: LayerKind
    kernel: int = Field(ge=1)
    stride: int = Field(default=1, ge=1)
    padding: int = Field(default=0, ge=0)
    pad_mode: Literal["reflect", "zero"] = "zero"
    in_ch: int = Field(ge=1)
    out_ch: int = Field(ge=1)
    activation: Literal["relu", "leaky_relu", "none"] = "relu"
    negative_slope: float = 0.2
    norm: Literal["instance", "none"] = "none"

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def residual_keeps_channels(self) -> "LayerSpec":
        if self.kind == "residual_block" and self.in_ch != self.out_ch:
            raise ValueError(
                f"residual_block needs in_ch == out_ch, got {self.in_ch} -> {self.out_ch}"
            )
        return self


class NetworkSpec(BaseModel):
    """Ordered layer list with channel compatibility between neighbours"""

    name: str
    input_channels: int = Field(ge=1)
    layers: List[LayerSpec]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def channels_chain(self) -> "NetworkSpec":
        channels = self.input_channels
        for index, layer in enumerate(self.layers):
            if layer.in_ch != channels:
                raise ValueError(
                    f"layer {index + 1} expects {layer.in_ch} input channels, "
                    f"previous stage produces {channels}"
                )
            channels = layer.out_ch
        return self


class LayerShape(BaseModel):
    """Output extents of one layer"""

    layer: int  # 1-based position in the network
    kind: LayerKind
    channels: int
    height: int
    width: int

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (self.channels, self.height, self.width)
