from gf2_dense import GF2System, random_dense

if __name__ == "__main__":
    system = GF2System(word_bits=64, variant="recursive")

    # The 4x5 matrix from the packaged data file
    A = system.matrix(["10111", "10001", "11010", "00111"])

    F = system.decompose(A)
    print("Rank:", F.rank)
    print("P:", F.P.perm.tolist())
    print("L:\n" + str(F.L))
    print("U:\n" + str(F.U))

    # Null space and a linear system
    print("Null space basis (columns):\n" + str(system.null_space(A)))
    print("Solution of A x = 1001:", system.solve(A, [1, 0, 0, 1]))

    # A larger random matrix, checked against the invariant suite
    B = random_dense(512, 600, density=0.5, seed=1)
    report = system.verify(B, "random 512x600")
    print("Rank of random 512x600:", system.rank(B))
    print("Invariants hold:", report.passed)
