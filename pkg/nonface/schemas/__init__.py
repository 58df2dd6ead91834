from nonface.schemas.training import *
from nonface.schemas.experiment import *
from nonface.schemas.model_file import *
