"""
Analysis service - structural summary of a single graph for the analyze
command: degrees, connectivity with a minimum separator, bipartiteness
certificate, blocks, cycle spectrum and the two standard dense/null splits.
"""

import logging

from config.settings import settings
from src.domain.graph import Graph
from src.domain.reports import AnalysisSummary
from src.services.detection_service import DetectionService
from src.services.lemma_service import STANDARD_FRACTIONS, LemmaService
from src.utils.bitsets import to_list
from src.utils.graph6 import write_graph6
from src.utils.structure import biconnected_components, bipartiteness, connectivity_with_separator


logger = logging.getLogger(__name__)


class AnalysisService:
    """Builds AnalysisSummary reports."""

    @staticmethod
    def analyze(g: Graph) -> AnalysisSummary:
        """
        Summarize g. The cycle spectrum is skipped above the spectrum cap,
        with the reason recorded in spectrum_note.
        """
        degrees = g.degrees()
        kappa, separator = (None, None)
        if g.order >= 2:
            kappa, separator = connectivity_with_separator(g)
        blocks, articulation = biconnected_components(g)

        spectrum = None
        note = None
        if g.order <= settings.spectrum_order_cap:
            spectrum = DetectionService.cycle_spectrum(g)
        else:
            note = f"order {g.order} exceeds the spectrum cap of {settings.spectrum_order_cap}"
            logger.info(f"Skipping cycle spectrum: {note}")

        return AnalysisSummary(
            graph6=write_graph6(g),
            order=g.order,
            edge_count=g.edge_count(),
            degrees=degrees,
            min_degree=min(degrees, default=0),
            max_degree=max(degrees, default=0),
            connectivity=kappa,
            separator=separator,
            bipartiteness=bipartiteness(g),
            blocks=[to_list(block) for block in blocks],
            articulation_points=to_list(articulation),
            cycle_spectrum=spectrum,
            spectrum_note=note,
            decompositions=[LemmaService.dense_null_decomposition(g, fraction) for fraction in STANDARD_FRACTIONS]
        )
