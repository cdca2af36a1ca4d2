"""FastAPI application exposing the relation engines.

Every endpoint converts its pydantic body to domain values through the
document builders, runs the shared ops layer, and returns the verdict.
Schema problems map to 400, mathematical domain errors to 422.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import documents, ops
from ..errors import CanrelError, DocumentError
from . import schemas


def _morphism(engine: str, body) -> object:
    dumped = body.model_dump()
    if engine == "finrel":
        return documents.build_finrel(dumped)
    return documents.build_canrel(dumped)


def _word_doc(body: schemas.PathBody) -> documents.WordDocument:
    return documents.build_word_document(body.model_dump(exclude_none=True))


def create_app() -> FastAPI:
    app = FastAPI(
        title="canrel",
        description=(
            "Exact composition, classification, and reduction/coreduction "
            "factorization of relations: finite sets or linear canonical relations."
        ),
        version="0.1.0",
    )

    @app.exception_handler(DocumentError)
    async def document_error(request: Request, exc: DocumentError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(CanrelError)
    async def domain_error(request: Request, exc: CanrelError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/compose", response_model=schemas.Verdict)
    def compose(req: schemas.ComposeRequest) -> dict:
        left = _morphism(req.engine, req.left)
        right = _morphism(req.engine, req.right)
        return ops.compose_op(req.engine, left, right)

    @app.post("/check", response_model=schemas.Verdict)
    def check(req: schemas.CheckRequest) -> dict:
        morphism = _morphism(req.engine, req.morphism)
        return ops.check_op(req.engine, morphism, req.predicate)

    @app.post("/factorize", response_model=schemas.Verdict)
    def factorize(req: schemas.FactorizeRequest) -> dict:
        doc = _word_doc(req.path)
        return ops.factorize_op(doc.engine_name, doc.word, mode=req.mode)

    @app.post("/normalize", response_model=schemas.Verdict)
    def normalize(req: schemas.NormalizeRequest) -> dict:
        return ops.normalize_op(_word_doc(req.path).path)

    @app.post("/verify", response_model=schemas.Verdict)
    def verify(req: schemas.VerifyRequest) -> dict:
        fact = documents.build_factorization(req.factorization.model_dump())
        doc = _word_doc(req.path)
        return ops.verify_op(doc.engine_name, doc.word, fact)

    return app


app = create_app()
