"""HTTP service layer: pydantic schemas, request handlers, FastAPI app.

The CLI calls the same handlers in-process; the FastAPI app in
`qba.service.app` exposes them over HTTP for long-running deployments
(plans are cached across requests).
"""
