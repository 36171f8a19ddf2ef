from typing import List

import numpy as np
import pandas as pd
import plotly.express as px
import plotly.graph_objects as go
from plotly.subplots import make_subplots

from .classification import SolutionClass
from .solver import OrbitReport


def create_orbit_animation(report: OrbitReport) -> go.Figure:
    """Creates a heatmap animation of the Theta-iterates of a matrix.

    Args:
        report: The orbit to show; frame k is the k-th iterate.

    Returns:
        A plotly figure with one animation frame per iterate.
    """
    frames = np.stack([np.asarray(iterate) for iterate in report.iterates])
    fig = px.imshow(
        frames,
        animation_frame=0,
        color_continuous_scale="Blues",
        zmin=int(frames.min()),
        zmax=max(1, int(frames.max())),
        labels={"animation_frame": "step", "color": "entry"},
    )
    fig.update_layout(title=f"Theta-orbit: {report.summary()}")
    fig.update_xaxes(side="top")
    return fig


def plot_classification(classes: List[SolutionClass]) -> go.Figure:
    """Creates a row of heatmaps, one per class representative, titled by name and period.

    Args:
        classes: The classes returned by the classification.

    Returns:
        A plotly figure; an empty figure with a title when there are no classes.
    """
    if not classes:
        fig = go.Figure()
        fig.update_layout(title="No solutions")
        return fig

    fig = make_subplots(
        cols=len(classes),
        horizontal_spacing=0.04,
        subplot_titles=[f"{c.name} (period {c.fundamental_period})" for c in classes],
    )
    for col, solution in enumerate(classes, start=1):
        fig.add_trace(
            go.Heatmap(
                z=np.asarray(solution.representative)[::-1],
                colorscale="Blues",
                showscale=False,
                name=solution.name,
                hoverinfo="name",
            ),
            row=1,
            col=col,
        )
    kappa, m = classes[0].kappa, classes[0].m
    fig.update_layout(title=f"Solutions of Theta^{m}(A) = A for kappa = {kappa}")
    fig.update_xaxes(showticklabels=False)
    fig.update_yaxes(showticklabels=False)
    return fig


def classification_table(classes: List[SolutionClass]) -> pd.DataFrame:
    """One row per class with its name, period and HS-form flag."""
    data = {
        "name": [c.name for c in classes],
        "aliases": [", ".join(c.names[1:]) for c in classes],
        "fundamental period": [c.fundamental_period for c in classes],
        "HS-form": [c.hs_form for c in classes],
    }
    return pd.DataFrame(data=data)
