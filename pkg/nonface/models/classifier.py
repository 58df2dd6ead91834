import numpy as np
from pydantic import BaseModel, Field, model_validator


class MlpClassifier(BaseModel):
    """
    Level 2 backpropagation network with one hidden layer

    w1 is hidden_dim x (input_dim + 1) and w2 is output_dim x (hidden_dim + 1);
    the last column of each holds the bias.
    """
    input_dim: int = Field(ge=1)
    hidden_dim: int = Field(ge=1)
    output_dim: int = Field(ge=1)
    seed: int = Field(default=0, ge=0)
    w1: np.ndarray
    w2: np.ndarray

    model_config = {"arbitrary_types_allowed": True}

    @model_validator(mode="after")
    def _check_weights(self):
        if self.w1.shape != (self.hidden_dim, self.input_dim + 1):
            raise ValueError(f"w1 shape {self.w1.shape} does not match dims")
        if self.w2.shape != (self.output_dim, self.hidden_dim + 1):
            raise ValueError(f"w2 shape {self.w2.shape} does not match dims")
        if not (np.all(np.isfinite(self.w1)) and np.all(np.isfinite(self.w2))):
            raise ValueError("weights must be finite")
        return self

    def copy_weights(self) -> "MlpClassifier":
        return self.model_copy(update={"w1": self.w1.copy(), "w2": self.w2.copy()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MlpClassifier):
            return NotImplemented
        return (
            (self.input_dim, self.hidden_dim, self.output_dim, self.seed)
            == (other.input_dim, other.hidden_dim, other.output_dim, other.seed)
            and np.array_equal(self.w1, other.w1)
            and np.array_equal(self.w2, other.w2)
        )
