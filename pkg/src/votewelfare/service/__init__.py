"""HTTP service layer: pydantic schemas, operations, and the FastAPI app."""
