"""FastAPI application exposing tournament checks over HTTP."""

import logging
from datetime import datetime
from typing import Dict, List, Optional

from dotenv import load_dotenv
from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from tournaments.automorphisms import automorphisms
from tournaments.digraph import ConnectorSet, Tournament, build_cyclic, build_pseudo_cyclic, paley_tournament
from tournaments.distinguishing import CheckMode, check_conjecture, distinguishing_cost
from tournaments.errors import TournamentError
from tournaments.indegree import classify_vertices, indegree_classes
from utils.config import get_settings

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

API_VERSION = "1.0.0"

# Initialize FastAPI app
app = FastAPI(
    title="Cyclic Tournament API",
    description="Automorphism groups and distinguishing labelings of cyclic tournaments",
    version=API_VERSION
)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=get_settings().cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class CyclicRequest(BaseModel):
    """A cyclic tournament T(2p+1;S-) given by its negative connectors."""
    p: int = Field(ge=1, description="Half-order p, n = 2p+1")
    neg: List[int] = Field(default_factory=list, description="Negative connectors inside 1..p")


class CheckRequest(CyclicRequest):
    """Request model for the conjecture check."""
    mode: CheckMode = CheckMode.CERTIFIED


class CheckResponse(BaseModel):
    """Response model for the conjecture check."""
    tournament: str
    holds: bool
    method: str
    aut_order: int
    witness: Optional[str] = None
    certificate: Optional[Dict] = None


class AutRequest(BaseModel):
    """Either a cyclic tournament or a tournament literal."""
    p: Optional[int] = Field(default=None, ge=1)
    neg: List[int] = Field(default_factory=list)
    literal: Optional[str] = Field(default=None, description="n, then one out-neighbour line per vertex")


class AutResponse(BaseModel):
    """Response model for the automorphism group."""
    n: int
    order: int
    elements: List[str]


class ProfileRequest(BaseModel):
    """A pseudo-cyclic tournament P(p;N)."""
    p: int = Field(ge=1)
    neg: List[int] = Field(default_factory=list)


class ProfileResponse(BaseModel):
    """Response model for the indegree profile."""
    tournament: str
    values: List[int]
    kinds: List[str]
    alpha: int
    delta: int
    pi: int
    classes: Dict[int, List[int]]


class PaleyResponse(BaseModel):
    """Response model for a Paley tournament."""
    n: int
    neg: List[int]
    holds: bool
    aut_order: int
    rho: int


def _bad_request(e: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(e))


@app.get("/")
async def root():
    """Root endpoint."""
    return {
        "name": "Cyclic Tournament API",
        "version": API_VERSION,
        "status": "running"
    }


@app.get("/api/health")
async def health_check():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "timestamp": datetime.now().isoformat(),
    }


@app.post("/api/check", response_model=CheckResponse)
def check(request: CheckRequest = Body(...)):
    """
    Decide whether the canonical 2-labeling of T(2p+1;S-) is distinguishing.

    Args:
        request: CheckRequest with p, negative connectors and mode

    Returns:
        CheckResponse with the verdict, deciding method and |Aut|
    """
    try:
        t = build_cyclic(request.p, ConnectorSet.of(request.p, request.neg))
        result = check_conjecture(t, request.mode)
    except TournamentError as e:
        raise _bad_request(e)
    except Exception as e:
        logger.exception("check failed")
        raise HTTPException(status_code=500, detail=f"Error checking tournament: {str(e)}")

    return CheckResponse(
        tournament=str(t),
        holds=result.holds,
        method=result.method,
        aut_order=result.group_order,
        witness=str(result.witness) if result.witness is not None else None,
        certificate=result.verdict.to_record(t) if result.verdict is not None else None,
    )


@app.post("/api/aut", response_model=AutResponse)
def aut(request: AutRequest = Body(...)):
    """Automorphism group of a cyclic tournament or of a tournament literal."""
    try:
        if request.literal:
            t = Tournament.from_literal(request.literal)
        elif request.p is not None:
            t = build_cyclic(request.p, ConnectorSet.of(request.p, request.neg))
        else:
            raise TournamentError("Give either p/neg or a tournament literal")
        group = automorphisms(t)
    except TournamentError as e:
        raise _bad_request(e)

    return AutResponse(n=group.n, order=group.order, elements=[g.cycle_notation() for g in group.elements])


@app.post("/api/profile", response_model=ProfileResponse)
def profile(request: ProfileRequest = Body(...)):
    """Indegree sequence, vertex kinds and indegree classes of P(p;N)."""
    try:
        pc = build_pseudo_cyclic(request.p, ConnectorSet.of(request.p, request.neg))
    except TournamentError as e:
        raise _bad_request(e)

    prof = classify_vertices(pc)
    return ProfileResponse(
        tournament=str(pc),
        values=list(prof.values),
        kinds=[kind.value for kind in prof.kinds],
        alpha=prof.alpha,
        delta=prof.delta,
        pi=prof.pi,
        classes={d: list(vs) for d, vs in indegree_classes(pc).classes.items()},
    )


@app.get("/api/paley/{n}", response_model=PaleyResponse)
def paley(n: int):
    """
    Build QR_n and report the conjecture verdict, |Aut| and the cost of distinguishing.

    Args:
        n: prime congruent to 3 mod 4

    Returns:
        PaleyResponse
    """
    try:
        t = paley_tournament(n)
        result = check_conjecture(t, CheckMode.CERTIFIED)
        rho = distinguishing_cost(t)
    except TournamentError as e:
        raise _bad_request(e)

    return PaleyResponse(n=n, neg=list(t.neg.members), holds=result.holds, aut_order=result.group_order, rho=rho)


if __name__ == "__main__":
    import uvicorn

    print("\n🚀 Starting Cyclic Tournament API...")
    print(f"📍 API URL: http://localhost:8000")
    print(f"📖 Docs: http://localhost:8000/docs")
    print(f"🔍 Health: http://localhost:8000/api/health\n")

    uvicorn.run(
        "api:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level=get_settings().log_level.lower()
    )
