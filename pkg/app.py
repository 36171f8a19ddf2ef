import json
from typing import List

from munch import Munch

from viktor.core import UserError
from viktor.core import ViktorController
from viktor.utils import memoize
from viktor.views import DataGroup
from viktor.views import DataItem
from viktor.views import DataResult
from viktor.views import DataView
from viktor.views import PlotlyResult
from viktor.views import PlotlyView

from parametrization import AppParametrization
from source.classification import classify
from source.corpus import corpus
from source.errors import ThetaLabError
from source.geometry import Graph
from source.geometry import diameter
from source.geometry import girth
from source.geometry import is_n_admissible
from source.geometry import is_terwilliger
from source.geometry import triangle_census
from source.matrices import classify_membership
from source.matrix_io import parse_matrix
from source.plotting import classification_table
from source.plotting import create_orbit_animation
from source.plotting import plot_classification
from source.solver import orbit
from source.standard_form import is_hs_form


def get_matrix(params: Munch) -> List[List[int]]:
    """Read the selected corpus matrix or the pasted "mat v1" text.

    Args:
        params: The parameters from the parametrization class.

    Returns:
        The matrix as nested lists, so it can be passed to memoized functions.
    """
    try:
        if params.input.source == "corpus":
            return corpus(params.input.name).matrix.tolist()
        return parse_matrix(params.input.text or "").matrix.tolist()
    except ThetaLabError as e:
        raise UserError(str(e))


@memoize  # Memoize because for the same input we don't need to iterate again
def run_orbit(matrix: List[List[int]], max_steps: int) -> str:
    """Iterate Theta on a matrix and animate the iterates.

    Returns:
        The plotly figure as JSON.
    """
    try:
        report = orbit(matrix, max_steps)
    except ThetaLabError as e:
        raise UserError(str(e))
    return create_orbit_animation(report).to_json()


@memoize
def run_classification(kappa: int, m: int) -> str:
    """Classify the solutions of Theta^m(A) = A for kappa <= 3.

    Returns:
        The plotly figure as JSON.
    """
    return plot_classification(classify(kappa, m)).to_json()


@memoize
def run_class_table(kappa: int, m: int) -> List[dict]:
    """Rows of the classification table, one per class."""
    return json.loads(classification_table(classify(kappa, m)).to_json(orient="records"))


class Controller(ViktorController):
    label = "Theta lab"
    parametrization = AppParametrization

    @PlotlyView("Theta-orbit", duration_guess=2)
    def get_orbit(self, params, **kwargs):
        """Animate the Theta-orbit of the selected matrix, with its period in the title."""
        matrix = get_matrix(params)
        return PlotlyResult(run_orbit(matrix, int(params.orbit.max_steps)))

    @DataView("Properties", duration_guess=1)
    def get_properties(self, params, **kwargs):
        """Membership flags and, for adjacency matrices, the graph certificates."""
        matrix = get_matrix(params)
        membership = classify_membership(matrix)
        items = [
            DataItem("kappa", "none" if membership.kappa is None else membership.kappa),
            DataItem("(0,1)-matrix with constant sums", str(membership.is_D_kappa)),
            DataItem("symmetric", str(membership.is_symmetric)),
            DataItem("zero diagonal", str(membership.zero_diagonal)),
            DataItem("J2-free", str(membership.j2_free)),
            DataItem("HS-form", str(is_hs_form(matrix))),
        ]
        try:
            graph = Graph(matrix)
        except ThetaLabError:
            return DataResult(DataGroup(*items))
        triangles = triangle_census(graph)[0]
        items += [
            DataItem("girth", str(girth(graph))),
            DataItem("diameter", str(diameter(graph))),
            DataItem("triangles", triangles),
            DataItem("Terwilliger (mu = 1)", str(is_terwilliger(graph, 1))),
            DataItem("neighbourhood geometry", str(is_n_admissible(graph))),
        ]
        return DataResult(DataGroup(*items))

    @PlotlyView("Classification", duration_guess=10)
    def get_classification(self, params, **kwargs):
        """Show one heatmap per solution class."""
        kappa = int(params.classification.kappa)
        m = int(params.classification.m)
        return PlotlyResult(run_classification(kappa, m))

    @DataView("Classes", duration_guess=10)
    def get_classes(self, params, **kwargs):
        """List the solution classes with their aliases, period and HS-form flag."""
        rows = run_class_table(int(params.classification.kappa), int(params.classification.m))
        if not rows:
            return DataResult(DataGroup(DataItem("classes", 0)))
        items = [
            DataItem(
                row["name"],
                f"period {row['fundamental period']}",
                subgroup=DataGroup(
                    DataItem("aliases", row["aliases"] or "none"),
                    DataItem("HS-form", str(row["HS-form"])),
                ),
            )
            for row in rows
        ]
        return DataResult(DataGroup(*items))
