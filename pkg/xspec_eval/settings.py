from typing import List, Literal, Optional, Tuple, Type

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class EvalSettings(BaseSettings):
    """Toolkit defaults"""

    # GAR is reported at these FAR operating points
    far_points: List[float] = [1e-1, 1e-3]
    normalization: Literal["minmax", "zscore", "none"] = "none"

    # SAWF
    sawf_reference_far: float = 1e-3
    sawf_tie_epsilon: float = 1e-9

    # Composite loss
    lambda_cyc: float = 10.0
    lambda_syn: float = 30.0
    lambda_idr: float = 10.0
    log_clamp: float = 1e-7

    # Synthetic scores and receptive-field probe
    seed: int = 42
    probe_max_channels: int = 8

    # Reports
    svg_width: int = 800
    svg_height: int = 600
    log_level: str = "INFO"
    log_file: Optional[str] = None

    model_config = SettingsConfigDict(case_sensitive=False, extra="ignore")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # Constructor arguments only: runs never depend on the process environment.
        return (init_settings,)
