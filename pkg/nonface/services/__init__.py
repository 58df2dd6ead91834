from nonface.services.dataset_service import DatasetService, DatasetError, PgmParseError
from nonface.services.transform_service import TransformService
from nonface.services.feature_service import FeatureService
from nonface.services.classifier_service import ClassifierService, DivergenceError
from nonface.services.experiment_service import ExperimentService

__all__ = [
    "DatasetService", "DatasetError", "PgmParseError",
    "TransformService",
    "FeatureService",
    "ClassifierService", "DivergenceError",
    "ExperimentService",
]
