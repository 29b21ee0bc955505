from .base import Centrality, CentralityRanking
from .centrality import EigenvectorCentrality, eigen_in_centrality, eigen_out_centrality
from .nonbacktracking import NonBacktrackingCentrality, nonbacktracking_centrality
from .communities import CommunityPartition, GirvanNewman, girvan_newman, undirected_view
from .quotient import QuotientGraph, quotient_by_module
from .degree import DegreeHistogram, degree_distribution, log_binned
