from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    PROJECT_NAME: str = "SMP-PHAT DoA Toolkit"
    API_V1_PREFIX: str = "/api/v1"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Acquisition
    SAMPLE_RATE: int = 16000
    SPEED_OF_SOUND: float = 343.0

    # STFT / GCC pipeline
    FRAME_SIZE: int = 512
    HOP_SIZE: int | None = None  # None means FRAME_SIZE // 2
    WINDOW: str = "hann"
    INTERPOLATION_FACTOR: int = 4
    BLOCK_FRAMES: int = 8
    PHAT_FLOOR: float = 1e-12

    # Search space
    GRID_LEVEL: int = 4
    MERGE_EPSILON: float = 1e-4

    # Arrays: built-in presets first, then <ARRAY_PRESET_DIR>/<name>.json
    DEFAULT_ARRAY: str = "respeaker-usb"
    ARRAY_PRESET_DIR: str | None = None

    # Room simulation
    ROOM_MAX_ORDER: int = 6
    SIM_DURATION_SECONDS: float = 1.0

    # Benchmarks
    BENCH_WARMUP: int = 10
    BENCH_REPETITIONS: int = 100

    MAX_UPLOAD_MB: int = 50

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"

    @property
    def hop_size(self) -> int:
        return self.HOP_SIZE if self.HOP_SIZE is not None else self.FRAME_SIZE // 2


settings = Settings()
