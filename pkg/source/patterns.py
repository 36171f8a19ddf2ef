import networkx as nx
from numpy import ndarray
from numpy import random
from numpy import roll
from numpy import zeros

DEFAULT_SEED = 1


def circulant(n: int, shifts: list) -> ndarray:
    """Create the sum of the cyclic shift matrices for the given shifts.

    Args:
        n: The order of the matrix.
        shifts: The shifts; a repeated shift adds its matrix twice.

    Returns:
        A ndarray with every row and column summing to len(shifts).
    """
    A = zeros((n, n), dtype="int64")
    eye = zeros((n, n), dtype="int64")
    eye[range(n), range(n)] = 1
    for shift in shifts:
        A += roll(eye, shift, axis=1)
    return A


def get_random_z_matrix(n: int, kappa: int, seed: int = DEFAULT_SEED, moves: int = None) -> ndarray:
    """Generate an integer matrix with all row and column sums equal to kappa.

    Starts from kappa times the identity spread over random cyclic shifts and
    applies random square moves (+1, -1, -1, +1 on the corners of a rectangle),
    which keep every sum. Entries may become negative. The same seed always
    generates the same matrix.

    Args:
        n: The order of the matrix, at least 2.
        kappa: The common line sum, any integer.
        seed: The random seed.
        moves: The number of square moves, 2n by default.

    Returns:
        A ndarray in Z(n, kappa).
    """
    state = random.RandomState(seed)
    A = zeros((n, n), dtype="int64")
    A += circulant(n, [int(state.randint(n))]) * kappa
    for _ in range(2 * n if moves is None else moves):
        i, k = state.choice(n, 2, replace=False)
        j, l = state.choice(n, 2, replace=False)
        step = int(state.choice([-1, 1]))
        A[i, j] += step
        A[k, l] += step
        A[i, l] -= step
        A[k, j] -= step
    return A


def get_random_d_matrix(n: int, kappa: int, seed: int = DEFAULT_SEED, moves: int = None) -> ndarray:
    """Generate a (0,1)-matrix with all row and column sums equal to kappa.

    Starts from a circulant with kappa distinct shifts and applies random
    switches, which swap the two diagonals of a 2x2 submatrix reading
    [[1, 0], [0, 1]] and keep the matrix binary.

    Args:
        n: The order of the matrix.
        kappa: The common line sum, 0 <= kappa <= n.
        seed: The random seed.
        moves: The number of attempted switches, 4n by default.

    Returns:
        A ndarray in D(n, kappa).
    """
    if not 0 <= kappa <= n:
        raise ValueError(f"kappa must lie between 0 and {n}, got {kappa}")
    state = random.RandomState(seed)
    A = circulant(n, list(state.choice(n, kappa, replace=False)))
    for _ in range(4 * n if moves is None else moves):
        i, k = state.choice(n, 2, replace=False)
        j, l = state.choice(n, 2, replace=False)
        if A[i, j] == A[k, l] == 1 and A[i, l] == A[k, j] == 0:
            A[i, j] = A[k, l] = 0
            A[i, l] = A[k, j] = 1
    return A


def get_random_regular_graph(n: int, kappa: int, seed: int = DEFAULT_SEED) -> ndarray:
    """Generate the adjacency matrix of a random kappa-regular simple graph.

    Args:
        n: The number of vertices; n * kappa must be even.
        kappa: The valency.
        seed: The random seed.

    Returns:
        A symmetric ndarray in D(n, kappa) with a zero diagonal.
    """
    G = nx.random_regular_graph(kappa, n, seed=seed)
    return nx.to_numpy_array(G, nodelist=range(n), dtype="int64")
