from pydantic import BaseModel, ConfigDict


class PropertyResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    worst: float | None = None
    tolerance: float | None = None
    detail: str = ""
