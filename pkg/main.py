from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field
from gf2_dense_lib.gf2_dense.system import GF2System
from gf2_dense_lib.gf2_dense.errors import GF2Error
from typing import Dict, Any, List, Literal, Optional

# --- Initialization ---
app = FastAPI(
    title="Dense GF(2) Linear Algebra",
    description="Rank, PLU-style factorization, products, null spaces and linear systems over the two-element field."
)

# Configure CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:5173", "*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Pydantic models for input data validation
class MatrixInput(BaseModel):
    rows: List[str] = Field(..., description="Matrix rows as strings of '0' and '1'.")

class DecomposeInput(MatrixInput):
    variant: Optional[Literal["block", "recursive"]] = None

class MultiplyInput(BaseModel):
    left: List[str]
    right: List[str]

class SolveInput(MatrixInput):
    rhs: str = Field(..., description="Right-hand side as a string of '0' and '1', one per row.")

GF2_SYSTEM = None

def initialize_gf2_system():
    return GF2System(word_bits=64, variant="recursive")

GF2_SYSTEM = initialize_gf2_system()

def _matrix(rows):
    try:
        return GF2_SYSTEM.matrix(rows)
    except (GF2Error, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))

def _rows(A):
    return str(A).splitlines() if A.n_cols else [""] * A.n_rows

@app.get("/")
def read_root():
    return {"message": "Dense GF(2) Linear Algebra API is running"}

@app.post("/rank", response_model=Dict[str, Any])
def matrix_rank(inputs: MatrixInput):
    return {"rank": GF2_SYSTEM.rank(_matrix(inputs.rows))}

@app.post("/decompose", response_model=Dict[str, Any])
def decompose_matrix(inputs: DecomposeInput):
    """Factors P*A = L*U without column permutations."""
    A = _matrix(inputs.rows)
    system = GF2_SYSTEM
    if inputs.variant and inputs.variant != system.variant:
        system = GF2System(word_bits=system.word_bits, variant=inputs.variant)
    F = system.decompose(A)
    return {
        "permutation": F.P.perm.tolist(),
        "L": _rows(F.L),
        "U": _rows(F.U),
        "rank": F.rank,
        "blockRanks": list(F.block_ranks),
    }

@app.post("/multiply", response_model=Dict[str, Any])
def multiply_matrices(inputs: MultiplyInput):
    A, B = _matrix(inputs.left), _matrix(inputs.right)
    try:
        return {"rows": _rows(GF2_SYSTEM.multiply(A, B))}
    except GF2Error as exc:
        raise HTTPException(status_code=422, detail=str(exc))

@app.post("/nullspace", response_model=Dict[str, Any])
def matrix_null_space(inputs: MatrixInput):
    """Basis vectors of the null space, one per returned row."""
    N = GF2_SYSTEM.null_space(_matrix(inputs.rows))
    return {"basis": _rows(N.transpose())}

@app.post("/solve", response_model=Dict[str, Any])
def solve_system(inputs: SolveInput):
    A = _matrix(inputs.rows)
    if set(inputs.rhs) - {"0", "1"}:
        raise HTTPException(status_code=422, detail="rhs may only contain '0' and '1'.")
    try:
        x = GF2_SYSTEM.solve(A, [int(ch) for ch in inputs.rhs])
    except GF2Error as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    return {
        "solution": None if x is None else "".join(str(int(v)) for v in x),
        "consistent": x is not None,
    }
