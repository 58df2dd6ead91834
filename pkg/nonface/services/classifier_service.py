from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import expit

from nonface.models.classifier import MlpClassifier
from nonface.models.features import CompactionMethod, ScalingParams
from nonface.schemas.model_file import ModelFile
from nonface.schemas.training import TrainConfig
from nonface.utils.logging_config import get_logger
from nonface.utils.rng import make_rng, spawn_rngs

logger = get_logger(__name__)

GradFn = Callable[[MlpClassifier, np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]


class DivergenceError(RuntimeError):
    """Training produced a NaN/Inf loss; epoch is 1-based"""

    def __init__(self, epoch: int):
        self.epoch = epoch
        super().__init__(f"training diverged at epoch {epoch} (loss is not finite)")


def _check_input(mlp: MlpClassifier, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != mlp.input_dim:
        raise ValueError(f"input has {x.shape[-1]} features, network expects {mlp.input_dim}")
    return x


class ClassifierService:
    @staticmethod
    def init_mlp(input_dim: int, hidden_dim: int, output_dim: int, seed: int) -> MlpClassifier:
        """Network with every weight and bias drawn uniformly from [-1, 1]"""
        if min(input_dim, hidden_dim, output_dim) < 1:
            raise ValueError("network dimensions must be at least 1")
        rng = make_rng(seed)
        w1 = rng.uniform(-1.0, 1.0, size=(hidden_dim, input_dim + 1))
        w2 = rng.uniform(-1.0, 1.0, size=(output_dim, hidden_dim + 1))
        return MlpClassifier(
            input_dim=input_dim,
            hidden_dim=hidden_dim,
            output_dim=output_dim,
            seed=seed,
            w1=w1,
            w2=w2,
        )

    @staticmethod
    def forward(mlp: MlpClassifier, x) -> Tuple[np.ndarray, np.ndarray]:
        """
        Hidden and output activations for one input or a batch of row inputs

        h = σ(w1·[x;1]), y = σ(w2·[h;1]) with σ the logistic sigmoid.
        """
        x = _check_input(mlp, x)
        hidden = expit(x @ mlp.w1[:, :-1].T + mlp.w1[:, -1])
        output = expit(hidden @ mlp.w2[:, :-1].T + mlp.w2[:, -1])
        return hidden, output

    @staticmethod
    def loss(mlp: MlpClassifier, x, t) -> float:
        """Squared error E = ½Σ(y - t)² for one sample"""
        _, y = ClassifierService.forward(mlp, x)
        return 0.5 * float(np.sum((y - np.asarray(t, dtype=np.float64)) ** 2))

    @staticmethod
    def backprop(mlp: MlpClassifier, x, t) -> Tuple[np.ndarray, np.ndarray]:
        """Analytic gradients of E with respect to w1 and w2 (bias columns included)"""
        x = _check_input(mlp, x)
        t = np.asarray(t, dtype=np.float64)
        hidden, y = ClassifierService.forward(mlp, x)
        delta_out = (y - t) * y * (1.0 - y)
        grad_w2 = np.outer(delta_out, np.append(hidden, 1.0))
        delta_hidden = (mlp.w2[:, :-1].T @ delta_out) * hidden * (1.0 - hidden)
        grad_w1 = np.outer(delta_hidden, np.append(x, 1.0))
        return grad_w1, grad_w2

    @staticmethod
    def one_hot(labels: Sequence[int], classes: int, soft: bool = False) -> np.ndarray:
        """Target rows: 1/0, or 0.9/0.1 when soft"""
        low, high = (0.1, 0.9) if soft else (0.0, 1.0)
        targets = np.full((len(labels), classes), low)
        targets[np.arange(len(labels)), np.asarray(labels, dtype=int)] = high
        return targets

    @staticmethod
    def train(
        mlp: MlpClassifier,
        samples: Sequence[Tuple[np.ndarray, np.ndarray]],
        cfg: TrainConfig,
    ) -> Tuple[MlpClassifier, List[float]]:
        """
        Online backpropagation with momentum

        Samples are visited in a fresh seeded order every epoch. Stops after
        cfg.max_epochs or once the epoch MSE (mean over samples and outputs)
        drops below cfg.target_mse. The input network is left untouched.
        """
        if not samples:
            raise ValueError("no training samples given")
        inputs = np.vstack([np.asarray(x, dtype=np.float64) for x, _ in samples])
        targets = np.vstack([np.asarray(t, dtype=np.float64) for _, t in samples])
        if inputs.shape[1] != mlp.input_dim:
            raise ValueError(f"samples have {inputs.shape[1]} features, network expects {mlp.input_dim}")
        if targets.shape[1] != mlp.output_dim:
            raise ValueError(f"targets have {targets.shape[1]} classes, network expects {mlp.output_dim}")

        trained = mlp.copy_weights()
        w1, w2 = trained.w1, trained.w2
        step1 = np.zeros_like(w1)
        step2 = np.zeros_like(w2)
        shuffle_rng = spawn_rngs(cfg.seed, 1)[0]
        lr, momentum = cfg.learning_rate, cfg.momentum
        count = inputs.shape[0]
        history: List[float] = []

        for epoch in range(1, cfg.max_epochs + 1):
            sse = 0.0
            for i in shuffle_rng.permutation(count):
                x, t = inputs[i], targets[i]
                x1 = np.append(x, 1.0)
                hidden = expit(w1 @ x1)
                h1 = np.append(hidden, 1.0)
                y = expit(w2 @ h1)
                err = y - t
                sse += float(err @ err)

                delta_out = err * y * (1.0 - y)
                delta_hidden = (w2[:, :-1].T @ delta_out) * hidden * (1.0 - hidden)
                step2 *= momentum
                step2 -= lr * np.outer(delta_out, h1)
                step1 *= momentum
                step1 -= lr * np.outer(delta_hidden, x1)
                w2 += step2
                w1 += step1

            mse = sse / (count * mlp.output_dim)
            if not np.isfinite(mse) or not (np.all(np.isfinite(w1)) and np.all(np.isfinite(w2))):
                logger.error(f"[bold red]✗[/bold red] Loss became non-finite at epoch {epoch}")
                raise DivergenceError(epoch)
            history.append(mse)
            if epoch % 50 == 0 or epoch == 1:
                logger.debug(f"[cyan]📉[/cyan] epoch {epoch}: mse={mse:.6f}")
            if mse < cfg.target_mse:
                logger.debug(f"[bold green]✓[/bold green] Reached target mse {cfg.target_mse} at epoch {epoch}")
                break

        return trained, history

    @staticmethod
    def predict(mlp: MlpClassifier, x) -> Union[int, np.ndarray]:
        """Index of the largest output; ties go to the lowest index"""
        _, y = ClassifierService.forward(mlp, x)
        if y.ndim == 1:
            return int(np.argmax(y))
        return np.argmax(y, axis=1)

    @staticmethod
    def gradient_check(
        mlp: MlpClassifier,
        x,
        t,
        grad_fn: Optional[GradFn] = None,
        h: float = 1e-5,
    ) -> float:
        """
        Compare analytic gradients with central differences over every weight

        Returns max |g_analytic - g_numeric| / max(1, |g_numeric|).
        """
        grad_fn = grad_fn or ClassifierService.backprop
        analytic = grad_fn(mlp, x, t)
        shifted = mlp.copy_weights()
        worst = 0.0
        for weights, grad in zip((shifted.w1, shifted.w2), analytic):
            for idx in np.ndindex(weights.shape):
                original = weights[idx]
                weights[idx] = original + h
                plus = ClassifierService.loss(shifted, x, t)
                weights[idx] = original - h
                minus = ClassifierService.loss(shifted, x, t)
                weights[idx] = original
                numeric = (plus - minus) / (2.0 * h)
                worst = max(worst, abs(grad[idx] - numeric) / max(1.0, abs(numeric)))
        return worst

    @staticmethod
    def save_model(
        path: Union[str, Path],
        mlp: MlpClassifier,
        method: CompactionMethod,
        block_size: int,
        scaling: ScalingParams,
        coefficients: str = "padded",
        soft_targets: bool = False,
        train_per_subject: int = 5,
    ) -> ModelFile:
        """Write a trained recognizer as JSON"""
        record = ModelFile(
            input_dim=mlp.input_dim,
            hidden_dim=mlp.hidden_dim,
            output_dim=mlp.output_dim,
            seed=mlp.seed,
            method=method,
            block_size=block_size,
            coefficients=coefficients,
            soft_targets=soft_targets,
            train_per_subject=train_per_subject,
            scaling_mins=scaling.mins.tolist(),
            scaling_maxs=scaling.maxs.tolist(),
            w1=mlp.w1.tolist(),
            w2=mlp.w2.tolist(),
        )
        Path(path).write_text(record.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info(f"[bold green]✓[/bold green] Model saved to [cyan]{path}[/cyan]")
        return record

    @staticmethod
    def load_model(path: Union[str, Path]) -> Tuple[MlpClassifier, ScalingParams, ModelFile]:
        """Read a model written by save_model"""
        record = ModelFile.model_validate_json(Path(path).read_text(encoding="utf-8"))
        mlp = MlpClassifier(
            input_dim=record.input_dim,
            hidden_dim=record.hidden_dim,
            output_dim=record.output_dim,
            seed=record.seed,
            w1=np.array(record.w1, dtype=np.float64).reshape(record.hidden_dim, record.input_dim + 1),
            w2=np.array(record.w2, dtype=np.float64).reshape(record.output_dim, record.hidden_dim + 1),
        )
        scaling = ScalingParams(
            mins=np.array(record.scaling_mins, dtype=np.float64),
            maxs=np.array(record.scaling_maxs, dtype=np.float64),
        )
        return mlp, scaling, record
