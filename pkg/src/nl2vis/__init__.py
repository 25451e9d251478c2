"""nl2vis: natural-language queries over tabular data.

Given a dataset and a query string, infers data attributes and analytic
tasks and returns a ranked list of Vega-Lite specifications, exposed as a
library (NL2Vis), a CLI (``nl2vis``), and an HTTP service.
"""

from .config import Config
from .core import AnalyticSpec, NL2Vis, deserialize, serialize
from .datasets import Dataset, load_dataset
from .errors import (AliasConflictError, ContractError, EmptyQueryError,
                     FormatError, IoError, NoVisualizationError,
                     ResourceError, ToolkitError, TypeCoercionError)
from .profiling import (DatasetProfile, get_metadata, infer_metadata,
                        set_alias_map, set_attribute_type)

__version__ = "0.1.0"

__all__ = [
    "AnalyticSpec", "AliasConflictError", "Config", "ContractError",
    "Dataset", "DatasetProfile", "EmptyQueryError", "FormatError", "IoError",
    "NL2Vis", "NoVisualizationError", "ResourceError", "ToolkitError",
    "TypeCoercionError", "deserialize", "get_metadata", "infer_metadata",
    "load_dataset", "serialize", "set_alias_map", "set_attribute_type",
    "__version__",
]
