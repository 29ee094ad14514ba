import networkx as nx

from linkless.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_edges_from(g.edges())
    return graph


def nx_planar(g: Graph) -> bool:
    planar, _ = nx.check_planarity(to_nx(g))
    return planar
