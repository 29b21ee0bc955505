from .metagraph import MetaGraph, NodeMeta, build_metagraph, map_call
from .export import export_graph, load_graph, write_graph
from .slicer import Slice, SliceRequest, backward_slice
