from .analytic_service import AnalyticService
from .classify_service import ClassifyService
from .graph_service import GraphService
from .square_service import SquareService
from .sweep_service import SweepService

__all__ = ['AnalyticService', 'ClassifyService', 'GraphService', 'SquareService', 'SweepService']
