# Copyright (c) 2026 The discoloc contributors.
# All rights reserved.
#
# This file is part of discoloc
# (discrepancy localization for large numerical model codes).
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# For any clarifications or special considerations,
# please open an issue on the project tracker.

"""
    Module: cli.py

    Command-line interface of discoloc. Every stage reads the artifacts of
    the previous stage from disk and writes its own into ``--output-dir``:

        parse        corpus summary before and after coverage filtering
        graph        metagraph.json and metagraph.dot
        select       selection.csv (rank,variable,score)
        slice        slice.json (and slice.dot)
        communities  communities.json (and communities.dot)
        centrality   centrality.csv (node,score,rank)
        refine       refinement_report.json and iter_<k>.dot
        quotient     module_ranking.csv
        degree-dist  degree_distribution.json and a log-log plot
        generate     seeded synthetic inputs

    Exit codes: 0 success, 2 input error, 3 empty result, 4 non-convergence.

    Classes:
        PipelineConfig: File-level settings shared by the subcommands.

    Functions:
        cmd_parse, cmd_graph, cmd_select, cmd_slice, cmd_communities,
        cmd_centrality, cmd_refine, cmd_quotient, cmd_degree_dist,
        cmd_generate: One function per subcommand, returning an exit code.
        build_parser: The argparse parser.
        main: Entry point.

    Dependencies:
        - argparse: command line
        - pyyaml: ``--config`` files
        - rich: console tables

    Authors:
        - discoloc contributors

    Version Info:
        - 17/Oct/2026: Initial version

"""

import argparse
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from .core.analytics.base import CentralityRanking
from .core.analytics.centrality import EigenvectorCentrality
from .core.analytics.communities import GirvanNewman
from .core.analytics.degree import degree_distribution
from .core.analytics.nonbacktracking import NonBacktrackingCentrality
from .core.analytics.quotient import quotient_by_module
from .core.errors import (
    DegenerateFit,
    EmptyGraph,
    EmptySlice,
    FatalSyntax,
    NotConverged,
    SourceIoError,
    TuningFailed,
    ZeroSpectralRadius,
)
from .core.frontend.coverage import apply_coverage, corpus_summary, load_coverage
from .core.frontend.parser import parse_corpus
from .core.frontend.symbols import resolve_uses
from .core.graph.export import PRESENTATION_THRESHOLD, load_graph, write_graph
from .core.graph.metagraph import build_metagraph
from .core.graph.slicer import SliceRequest, backward_slice, induce, load_name_map
from .core.refinement.config import BugSpec, RefinementConfig, read_yaml
from .core.refinement.engine import Status, history_rows, run_refinement
from .core.selection.base import ordering_agreement
from .core.selection.ensemble import EnsembleTable
from .core.selection.lasso import LassoSelector
from .core.selection.median_distance import MedianDistance
from .core.selection.raw_diff import RawDifference
from .core.synthetic.generators import composite_call_corpus, generate_corpus, shifted_ensemble
from .core.utils.io_utils import read_selection, write_json, write_ranking
from .core.utils.log_utils import get_logger
from .core.utils.plot_utils import plot_centrality_comparison, plot_degree_distribution
from .core.utils.print_utils import print_ranking, print_rows

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3
EXIT_NOT_CONVERGED = 4

CENTRALITY_METHODS = ("eigen_in", "eigen_out", "nonbacktracking_in", "nonbacktracking_out")


@dataclass
class PipelineConfig:
    """
    Settings shared by the subcommands, read from YAML and overridden by
    command-line flags.

    Attributes:
        corpus_dir (Optional[str]): Directory of ``.mf90`` sources.
        coverage_path (Optional[str]): Coverage JSON.
        name_map_path (Optional[str]): Output-name to canonical-name JSON.
        ensemble_csv (Optional[str]): Ensemble table.
        scope_modules (List[str]): Modules kept by slicing, all when empty.
        refinement (RefinementConfig): Refinement loop parameters.
        output_dir (str): Where artifacts are written.
        export_dot (bool): Also write DOT files.
        presentation (bool): Drop small clusters from DOT exports.
        seed (int): Seed of the synthetic generators.
    """

    corpus_dir: Optional[str] = None
    coverage_path: Optional[str] = None
    name_map_path: Optional[str] = None
    ensemble_csv: Optional[str] = None
    scope_modules: List[str] = field(default_factory=list)
    refinement: RefinementConfig = field(default_factory=RefinementConfig)
    output_dir: str = "discoloc_output"
    export_dot: bool = False
    presentation: bool = False
    seed: int = 0

    @classmethod
    def from_yaml(cls, path) -> "PipelineConfig":
        data = read_yaml(path) or {}
        if not isinstance(data, dict):
            raise SourceIoError(f"{path}: expected a mapping")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown pipeline settings: {sorted(unknown)}")
        values = dict(data)
        if "refinement" in values:
            values["refinement"] = RefinementConfig.from_mapping(values["refinement"] or {})
        return cls(**values)

    def require(self, *names: str) -> None:
        """
        Raises:
            SourceIoError: A required path is unset or does not exist.
        """
        for name in names:
            value = getattr(self, name)
            if value is None or not Path(value).exists():
                raise SourceIoError(f"{name} is required and must exist (got {value!r})")

    @property
    def output(self) -> Path:
        path = Path(self.output_dir)
        path.mkdir(parents=True, exist_ok=True)
        return path


def _load_corpus(cfg: PipelineConfig):
    cfg.require("corpus_dir")
    before = parse_corpus(cfg.corpus_dir)
    after = None
    if cfg.coverage_path is not None:
        cfg.require("coverage_path")
        after = apply_coverage(before, load_coverage(cfg.coverage_path))
    return before, after


def cmd_parse(cfg: PipelineConfig, fmt: str = "json") -> int:
    """Print and write module/subprogram/statement counts before and after coverage filtering."""
    before, after = _load_corpus(cfg)
    summary = corpus_summary(before, after)
    frame = pd.DataFrame(summary).rename_axis("count").reset_index()
    print_rows("Corpus", ["", "before", "after coverage"], frame.values.tolist())
    logger.info("modules: %d → %d", summary["before"]["modules"], summary["after"]["modules"])
    if fmt == "csv":
        frame.to_csv(cfg.output / "corpus_summary.csv", index=False)
    else:
        write_json(summary, cfg.output / "corpus_summary.json")
    return EXIT_OK


def cmd_graph(cfg: PipelineConfig) -> int:
    """Build the metagraph and write it as JSON and DOT."""
    before, after = _load_corpus(cfg)
    corpus = after if after is not None else before
    table = resolve_uses(corpus)
    g = build_metagraph(corpus, table)
    write_graph(g, cfg.output / "metagraph.json")
    write_graph(g, cfg.output / "metagraph.dot")
    print_rows(
        "Metagraph",
        ["nodes", "edges", "modules", "diagnostics"],
        [[len(g), g.number_of_edges, len(g.modules), len(g.diagnostics)]],
    )
    return EXIT_OK


def cmd_select(cfg: PipelineConfig, method: str, target_count: int = 5, **options) -> int:
    """
    Rank output variables and write ``selection.csv``. With ``compare`` the
    median-distance and lasso orderings are compared in ``agreement.json``.
    """
    cfg.require("ensemble_csv")
    table = EnsembleTable.read_csv(cfg.ensemble_csv)
    if method == "raw_diff":
        selector = RawDifference(
            options.get("member_index", 0),
            options.get("run_index", 0),
            options.get("rel_tol", 1e-6),
        )
    elif method == "median_distance":
        selector = MedianDistance()
    elif method == "lasso":
        selector = LassoSelector(target_count=target_count)
    else:
        raise ValueError(f"Unknown selection method '{method}'")

    result = selector.select(table)
    result.write_csv(cfg.output / "selection.csv")
    print_ranking(f"Selection ({method})", result.ranked)

    if options.get("compare"):
        agreement = ordering_agreement(
            MedianDistance().select(table), LassoSelector(target_count).select(table)
        )
        write_json(agreement, cfg.output / "agreement.json")
        logger.info(
            "median/lasso overlap %.2f, kendall tau %s",
            agreement["overlap"],
            agreement["kendall_tau"],
        )
    return EXIT_OK if result.tuned else EXIT_NOT_CONVERGED


def cmd_slice(
    cfg: PipelineConfig,
    graph_path,
    targets: Sequence[str] = (),
    selection_path=None,
    top: Optional[int] = None,
    fmt: str = "json",
) -> int:
    """Backward slice of a graph for explicit targets or the variables of a selection CSV."""
    g = load_graph(graph_path)
    names = [t.lower() for t in targets]
    if selection_path is not None:
        selected = read_selection(selection_path)
        names += selected[:top] if top else selected
    if not names:
        raise EmptySlice("no slice targets given")
    name_map = None
    if cfg.name_map_path is not None:
        cfg.require("name_map_path")
        name_map = load_name_map(cfg.name_map_path)

    scope = frozenset(cfg.scope_modules) if cfg.scope_modules else None
    result = backward_slice(g, SliceRequest(frozenset(names), scope), name_map)
    write_graph(result.graph, cfg.output / "slice.json")
    if fmt == "dot" or cfg.export_dot:
        threshold = PRESENTATION_THRESHOLD if cfg.presentation else None
        write_graph(result.graph, cfg.output / "slice.dot", presentation_threshold=threshold)
    print_rows(
        "Slice",
        ["targets", "terminals", "nodes", "edges"],
        [
            [
                ", ".join(sorted(result.targets)),
                len(result.terminals),
                len(result),
                result.graph.number_of_edges,
            ]
        ],
    )
    return EXIT_OK


def cmd_communities(cfg: PipelineConfig, graph_path, fmt: str = "json") -> int:
    g = load_graph(graph_path)
    gn = GirvanNewman(cfg.refinement.min_community, cfg.refinement.gn_iterations)
    partition = gn.fit(g)
    write_json(
        {
            "params": gn.get_model_params(),
            "communities": partition.to_json(),
            "removed_edges": [list(e) for e in partition.removed_edges],
        },
        cfg.output / "communities.json",
    )
    if fmt == "dot" or cfg.export_dot:
        threshold = PRESENTATION_THRESHOLD if cfg.presentation else None
        write_graph(
            g,
            cfg.output / "communities.dot",
            communities=[sorted(c) for c in partition.communities],
            presentation_threshold=threshold,
        )
    print_rows(
        "Communities",
        ["#", "size", "first nodes"],
        [[i, len(c), ", ".join(sorted(c)[:3])] for i, c in enumerate(partition.communities, 1)],
    )
    return EXIT_OK if partition.communities else EXIT_EMPTY


def _centrality(method: str, cfg: RefinementConfig):
    kind, direction = method.rsplit("_", 1)
    if kind == "eigen":
        return EigenvectorCentrality(direction, cfg.tol, cfg.max_iter)
    return NonBacktrackingCentrality(direction, cfg.tol, cfg.max_iter)


def cmd_centrality(
    cfg: PipelineConfig,
    graph_path,
    method: str = "eigen_in",
    top_k: Optional[int] = None,
    compare: bool = False,
) -> int:
    """
    Rank the nodes of a graph and write ``centrality.csv``. The CSV is
    written even when the iteration does not converge; the exit code is 4
    then. With ``compare`` eigenvector and non-backtracking in-centrality are
    plotted side by side.
    """
    if method not in CENTRALITY_METHODS:
        raise ValueError(f"Unknown centrality method '{method}', expected one of {CENTRALITY_METHODS}")
    g = load_graph(graph_path)
    ranking = _centrality(method, cfg.refinement).fit(g)
    write_ranking(ranking, cfg.output / "centrality.csv", top_k)
    print_ranking(
        f"Centrality ({method})",
        [(n, ranking.scores[n]) for n in ranking.ordering],
        top_k or 20,
    )

    if compare:
        direction = method.rsplit("_", 1)[1]
        tol, max_iter = cfg.refinement.tol, cfg.refinement.max_iter
        eigen = EigenvectorCentrality(direction, tol, max_iter).fit(g)
        nonbacktracking = NonBacktrackingCentrality(direction, tol, max_iter).fit(g)
        plot_centrality_comparison(eigen, nonbacktracking, cfg.output)
    return EXIT_OK if ranking.converged else EXIT_NOT_CONVERGED


def cmd_refine(
    cfg: PipelineConfig, slice_path, bugs_path, graph_path, dot: bool = False
) -> int:
    """
    Refine a slice with simulated sampling. ``graph_path`` is the full
    metagraph the slice was cut from; sampling reachability is taken on it.
    """
    current = load_graph(slice_path)
    full = load_graph(graph_path)
    outside = set(current.nodes) - set(full.nodes)
    if outside:
        raise ValueError(
            f"slice has {len(outside)} nodes missing from the full graph, "
            f"e.g. {sorted(outside)[:3]}"
        )
    bugs = BugSpec.from_file(bugs_path)
    report = run_refinement(
        induce(current, current.nodes),
        cfg.refinement,
        bugs,
        full,
        dot_dir=cfg.output if (dot or cfg.export_dot) else None,
    )
    report.write(cfg.output / "refinement_report.json")
    print_rows(
        "Refinement",
        ["iteration", "communities", "sampled", "differing", "branch", "before", "after", "status"],
        history_rows(report.state.history),
    )
    return EXIT_NOT_CONVERGED if report.status is Status.RUNNING else EXIT_OK


def cmd_quotient(cfg: PipelineConfig, graph_path, top_k: int = 50, method: str = "eigen_in") -> int:
    """Rank modules by the centrality of the module quotient graph."""
    g = load_graph(graph_path)
    quotient = quotient_by_module(g)
    if quotient.is_edgeless:
        logger.warning("module quotient has no edges; every module gets the same score")
    ranking: CentralityRanking = _centrality(method, cfg.refinement).fit(quotient.digraph)
    write_ranking(ranking, cfg.output / "module_ranking.csv", top_k)
    print_ranking(f"Modules ({method})", [(n, ranking.scores[n]) for n in ranking.ordering], top_k)
    return EXIT_OK if ranking.converged else EXIT_NOT_CONVERGED


def cmd_degree_dist(cfg: PipelineConfig, graph_path, plot: bool = True) -> int:
    """Degree histogram with a power-law exponent; exit 3 when the fit is degenerate."""
    g = load_graph(graph_path)
    histogram = degree_distribution(g)
    write_json(histogram.to_dict(), cfg.output / "degree_distribution.json")
    if plot:
        plot_degree_distribution(histogram, cfg.output)
    if histogram.fitted_exponent is None:
        raise DegenerateFit("degree distribution has too few distinct degrees", histogram)
    logger.info("fitted power-law exponent %.3f", histogram.fitted_exponent)
    return EXIT_OK


def cmd_generate(cfg: PipelineConfig, kind: str) -> int:
    """Write synthetic inputs: a random corpus with a bug, the composite-call corpus or an ensemble."""
    out = cfg.output
    if kind == "corpus":
        corpus = generate_corpus(cfg.seed)
        corpus.write(out / "corpus")
        write_json(
            {"bug_nodes": sorted(corpus.bug_nodes), "targets": list(corpus.targets), "seed": cfg.seed},
            out / "bugs.json",
        )
    elif kind == "composite":
        composite_call_corpus().write(out / "corpus")
    elif kind == "ensemble":
        shifts = {"var03": 4.0, "var11": 3.0, "var17": 2.5, "var23": 2.0, "var31": 1.5}
        shifted_ensemble(shifts=shifts, seed=cfg.seed).write_csv(out / "ensemble.csv")
    else:
        raise ValueError(f"Unknown generator '{kind}'")
    logger.info("wrote %s fixture to %s", kind, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discoloc", description="Localize the sources of model output discrepancies."
    )
    parser.add_argument("--output-dir", help="Directory for all artifacts")
    parser.add_argument("--seed", type=int, help="Seed of the synthetic generators")
    parser.add_argument("--format", choices=("json", "dot", "csv"), default="json", dest="fmt")
    parser.add_argument("--config", help="Pipeline configuration YAML")
    parser.add_argument(
        "--presentation", action="store_true", help="Drop clusters below 4 nodes from DOT output"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="Parse a corpus and report counts")
    p.add_argument("corpus_dir")
    p.add_argument("--coverage")

    p = sub.add_parser("graph", help="Build the metagraph")
    p.add_argument("corpus_dir")
    p.add_argument("--coverage")

    p = sub.add_parser("select", help="Select affected output variables")
    p.add_argument("ensemble_csv")
    p.add_argument(
        "--method", choices=("raw_diff", "median_distance", "lasso"), default="median_distance"
    )
    p.add_argument("--target-count", type=int, default=5)
    p.add_argument("--member-index", type=int, default=0)
    p.add_argument("--run-index", type=int, default=0)
    p.add_argument("--rel-tol", type=float, default=1e-6)
    p.add_argument("--compare", action="store_true", help="Compare median-distance and lasso orderings")

    p = sub.add_parser("slice", help="Backward slice for target variables")
    p.add_argument("graph")
    p.add_argument("--target", action="append", default=[])
    p.add_argument("--selection", help="Selection CSV supplying targets")
    p.add_argument("--top", type=int, help="Use only the first N selected variables")
    p.add_argument("--name-map")
    p.add_argument("--scope", nargs="+", help="Modules to keep")

    p = sub.add_parser("communities", help="Girvan-Newman communities")
    p.add_argument("graph")
    p.add_argument("--min-size", type=int)
    p.add_argument("--iterations", type=int)

    p = sub.add_parser("centrality", help="Rank nodes by centrality")
    p.add_argument("graph")
    p.add_argument("--method", choices=CENTRALITY_METHODS, default="eigen_in")
    p.add_argument("--top-k", type=int)
    p.add_argument(
        "--compare", action="store_true", help="Plot eigenvector against non-backtracking scores"
    )

    p = sub.add_parser("refine", help="Iterative refinement with simulated sampling")
    p.add_argument("slice")
    p.add_argument("--bugs", required=True)
    p.add_argument("--graph", required=True, help="Full metagraph used for reachability")
    p.add_argument("--m", type=int)
    p.add_argument("--min-community", type=int)
    p.add_argument("--stop-size", type=int)
    p.add_argument("--max-iterations", type=int)
    p.add_argument("--gn-iterations", type=int)
    p.add_argument("--dot", action="store_true", help="Write iter_<k>.dot files")

    p = sub.add_parser("quotient", help="Rank modules on the quotient graph")
    p.add_argument("graph")
    p.add_argument("--top-k", type=int, default=50)
    p.add_argument("--method", choices=CENTRALITY_METHODS, default="eigen_in")

    p = sub.add_parser("degree-dist", help="Degree distribution and power-law fit")
    p.add_argument("graph")
    p.add_argument("--no-plot", action="store_true")

    p = sub.add_parser("generate", help="Write synthetic inputs")
    p.add_argument("kind", choices=("corpus", "composite", "ensemble"))
    return parser


def _config(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig.from_yaml(args.config) if args.config else PipelineConfig()
    overrides: Dict[str, Any] = {
        "output_dir": args.output_dir,
        "seed": args.seed,
        "corpus_dir": getattr(args, "corpus_dir", None),
        "coverage_path": getattr(args, "coverage", None),
        "ensemble_csv": getattr(args, "ensemble_csv", None),
        "name_map_path": getattr(args, "name_map", None),
        "scope_modules": getattr(args, "scope", None),
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(cfg, key, value)
    if args.presentation:
        cfg.presentation = True
    cfg.refinement = cfg.refinement.replace(
        m=getattr(args, "m", None),
        min_community=getattr(args, "min_community", None) or getattr(args, "min_size", None),
        stop_size=getattr(args, "stop_size", None),
        max_iterations=getattr(args, "max_iterations", None),
        gn_iterations=getattr(args, "gn_iterations", None) or getattr(args, "iterations", None),
    )
    return cfg


def _dispatch(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    command = args.command
    if command == "parse":
        return cmd_parse(cfg, args.fmt)
    if command == "graph":
        return cmd_graph(cfg)
    if command == "select":
        return cmd_select(
            cfg,
            args.method,
            args.target_count,
            member_index=args.member_index,
            run_index=args.run_index,
            rel_tol=args.rel_tol,
            compare=args.compare,
        )
    if command == "slice":
        return cmd_slice(cfg, args.graph, args.target, args.selection, args.top, args.fmt)
    if command == "communities":
        return cmd_communities(cfg, args.graph, args.fmt)
    if command == "centrality":
        return cmd_centrality(cfg, args.graph, args.method, args.top_k, args.compare)
    if command == "refine":
        return cmd_refine(cfg, args.slice, args.bugs, args.graph, args.dot)
    if command == "quotient":
        return cmd_quotient(cfg, args.graph, args.top_k, args.method)
    if command == "degree-dist":
        return cmd_degree_dist(cfg, args.graph, not args.no_plot)
    return cmd_generate(cfg, args.kind)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        int: 0 success, 2 input error, 3 empty result, 4 non-convergence.
    """
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args, _config(args))
    except (FatalSyntax, SourceIoError) as exc:
        logger.error("%s", exc)
        return EXIT_INPUT
    except (EmptySlice, EmptyGraph, DegenerateFit, ZeroSpectralRadius) as exc:
        logger.error("%s", exc)
        return EXIT_EMPTY
    except (NotConverged, TuningFailed) as exc:
        logger.error("%s", exc)
        return EXIT_NOT_CONVERGED
    except ValueError as exc:
        logger.error("invalid input: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
