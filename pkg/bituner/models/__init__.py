from .features import FEATURE_NAMES, FeatureVector, SampleRecord
from .forest import ForestDocument, ForestParams, TreeDocument
from .params import BIParams
from .report import EvaluationReport, HeuristicSummary, ReportRow
