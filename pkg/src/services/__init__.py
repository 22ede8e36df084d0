# src/services/__init__.py
from .construction_service import ConstructionService
from .detection_service import DetectionService
from .generation_service import GenerationService, HereditaryFilter
from .stochastic_service import StochasticSearchService
from .arrowing_service import ArrowingService
from .lemma_service import LemmaService
from .analysis_service import AnalysisService

__all__ = [
    'ConstructionService',
    'DetectionService',
    'GenerationService',
    'HereditaryFilter',
    'StochasticSearchService',
    'ArrowingService',
    'LemmaService',
    'AnalysisService',
]
